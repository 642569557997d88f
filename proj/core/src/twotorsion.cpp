#include "kummerlab/twotorsion.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace kummerlab {

RootConfig RootConfig::genus1(const std::array<Integer, 3>& c) {
    RootConfig cfg;
    cfg.genus_ = 1;
    cfg.roots_.assign(c.begin(), c.end());
    cfg.diff_prod_ = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) cfg.diff_prod_ *= c[j] - c[i];
    if (cfg.diff_prod_ == 0) throw domain_error("RootConfig: repeated roots");
    return cfg;
}

RootConfig RootConfig::genus2(const std::array<Integer, 6>& a) {
    RootConfig cfg;
    cfg.genus_ = 2;
    cfg.roots_.assign(a.begin(), a.end());
    cfg.diff_prod_ = 1;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) cfg.diff_prod_ *= a[j] - a[i];
    if (cfg.diff_prod_ == 0) throw domain_error("RootConfig: repeated roots");
    return cfg;
}

TwoTorsionPoint::TwoTorsionPoint(const RootConfig& cfg, std::uint32_t subset_mask)
    : mask_(subset_mask), genus_(cfg.genus()) {
    const std::uint32_t full = (std::uint32_t(1) << cfg.size()) - 1;
    if (mask_ & ~full) throw domain_error("TwoTorsionPoint: subset out of range");
    if (std::popcount(mask_) % 2) throw domain_error("TwoTorsionPoint: odd subset");
    // Canonical representative: the one avoiding the last root.
    if (mask_ >> (cfg.size() - 1) & 1) mask_ ^= full;
}

TwoTorsionPoint TwoTorsionPoint::operator+(const TwoTorsionPoint& o) const {
    if (genus_ != o.genus_) throw domain_error("TwoTorsionPoint: genus mismatch");
    TwoTorsionPoint r;
    r.genus_ = genus_;
    r.mask_ = mask_ ^ o.mask_;
    const int n = 2 * genus_ + 2;
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    if (r.mask_ >> (n - 1) & 1) r.mask_ ^= full;
    return r;
}

std::vector<TwoTorsionPoint> all_two_torsion(const RootConfig& cfg) {
    std::vector<TwoTorsionPoint> pts;
    const int n = cfg.size();
    for (std::uint32_t m = 0; m < (std::uint32_t(1) << (n - 1)); ++m)
        if (std::popcount(m) % 2 == 0) pts.emplace_back(cfg, m);
    return pts;
}

int weil_pairing(const TwoTorsionPoint& P, const TwoTorsionPoint& Q) {
    if (P.genus() != Q.genus()) throw domain_error("weil_pairing: mismatched configs");
    return std::popcount(P.mask() & Q.mask()) % 2 ? -1 : 1;
}

BVector::BVector(const RootConfig& cfg, std::vector<Rational> b)
    : cfg_(cfg), b_(std::move(b)) {
    if (static_cast<int>(b_.size()) != cfg_.size())
        throw domain_error("BVector: expected " + std::to_string(cfg_.size()) + " entries");
    Rational prod = 1;
    for (const auto& x : b_) {
        if (x == 0) throw domain_error("BVector: zero entry");
        prod *= x;
    }
    if (!SquareClass(prod).is_trivial())
        throw domain_error("BVector: product of entries is not a square");
}

std::vector<TwoTorsionPoint> default_basis(const RootConfig& cfg) {
    std::vector<TwoTorsionPoint> basis;
    const int n = cfg.size();
    for (int i = 0; i < 2 * cfg.genus(); ++i)
        basis.emplace_back(cfg, (std::uint32_t(1) << i) | (std::uint32_t(1) << (n - 1)));
    return basis;
}

std::vector<F2Vec> weil_gram(const std::vector<TwoTorsionPoint>& basis) {
    std::vector<F2Vec> rows(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (weil_pairing(basis[i], basis[j]) == -1) rows[i] |= F2Vec(1) << j;
    return rows;
}

std::vector<F2Vec> f2_invert(const std::vector<F2Vec>& rows) {
    const std::size_t n = rows.size();
    std::vector<F2Vec> a = rows, inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = F2Vec(1) << i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && !(a[piv] >> col & 1)) ++piv;
        if (piv == n) throw domain_error("f2_invert: singular matrix");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        for (std::size_t i = 0; i < n; ++i)
            if (i != col && (a[i] >> col & 1)) {
                a[i] ^= a[col];
                inv[i] ^= inv[col];
            }
    }
    return inv;
}

CohClass::CohClass(const RootConfig& cfg, std::vector<TwoTorsionPoint> basis,
                   std::vector<SquareClass> coords)
    : cfg_(cfg), basis_(std::move(basis)), coords_(std::move(coords)) {
    if (basis_.size() != coords_.size() ||
        static_cast<int>(basis_.size()) != 2 * cfg_.genus())
        throw domain_error("CohClass: basis/coordinate size mismatch");
}

CohClass CohClass::zero(const RootConfig& cfg) {
    return CohClass(cfg, default_basis(cfg),
                    std::vector<SquareClass>(2 * cfg.genus()));
}

CohClass CohClass::from_coords(const RootConfig& cfg, std::vector<SquareClass> coords) {
    return CohClass(cfg, default_basis(cfg), std::move(coords));
}

CohClass CohClass::from_bvector(const BVector& b) {
    auto basis = default_basis(b.config());
    std::vector<SquareClass> coords;
    coords.reserve(basis.size());
    for (const auto& P : basis) coords.push_back(pair_h1(b, P));
    return CohClass(b.config(), std::move(basis), std::move(coords));
}

bool CohClass::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const SquareClass& c) { return c.is_trivial(); });
}

CohClass CohClass::operator+(const CohClass& o) const {
    if (!(cfg_ == o.cfg_) || basis_.size() != o.basis_.size())
        throw domain_error("CohClass: mismatched configs");
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (!(basis_[i] == o.basis_[i]))
            throw domain_error("CohClass: mismatched bases");
    std::vector<SquareClass> coords;
    coords.reserve(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords.push_back(coords_[i] * o.coords_[i]);
    return CohClass(cfg_, basis_, std::move(coords));
}

bool CohClass::operator==(const CohClass& o) const {
    return cfg_ == o.cfg_ && basis_ == o.basis_ && coords_ == o.coords_;
}

SquareClass pair_h1(const BVector& beta, const TwoTorsionPoint& P) {
    if (P.genus() != beta.config().genus())
        throw domain_error("pair_h1: mismatched configs");
    Rational prod = 1;
    for (int i = 0; i < beta.config().size(); ++i)
        if (P.mask() >> i & 1) prod *= beta.entries()[i];
    return SquareClass(prod);
}

SquareClass pair_h1(const CohClass& beta, const TwoTorsionPoint& P) {
    if (P.genus() != beta.config().genus())
        throw domain_error("pair_h1: mismatched configs");
    // Solve P = sum x_j B_j from the pairings of P against the basis:
    // x = G^{-1} (log <P, B_i>)_i, then <beta, P> = prod coords[j]^{x_j}.
    auto gram = weil_gram(beta.basis());
    auto ginv = f2_invert(gram);
    F2Vec pv = 0;
    for (std::size_t i = 0; i < beta.basis().size(); ++i)
        if (weil_pairing(P, beta.basis()[i]) == -1) pv |= F2Vec(1) << i;
    SquareClass out;
    for (std::size_t j = 0; j < beta.basis().size(); ++j)
        if (f2_dot(ginv[j], pv)) out = out * beta.coords()[j];
    return out;
}

std::array<SquareClass, 2> delta_torsion(const RootConfig& curve,
                                         const TwoTorsionPoint& T, const Integer& d) {
    if (curve.genus() != 1) throw domain_error("delta_torsion: genus-1 curves only");
    if (T.genus() != 1) throw domain_error("delta_torsion: mismatched configs");
    if (T.is_identity())
        throw domain_error("delta_torsion: identity point (image is trivial)");
    // Canonical representative is a pair of finite roots; the point is T_i
    // where i is the missing finite root.
    int i = -1;
    for (int k = 0; k < 3; ++k)
        if (!(T.mask() >> k & 1)) {
            i = k;
            break;
        }
    std::array<Rational, 3> c;
    for (int k = 0; k < 3; ++k) c[k] = Rational(d * curve.finite_roots()[k]);
    // (x - c1, x - c2) at x = c_i, with the vanishing coordinate replaced by
    // the product of the other two differences.
    auto coord = [&](int j) -> Rational {
        if (i != j) return c[i] - c[j];
        Rational prod = 1;
        for (int k = 0; k < 3; ++k)
            if (k != i) prod *= c[i] - c[k];
        return prod;
    };
    return {SquareClass(coord(0)), SquareClass(coord(1))};
}

int cup_local_invariant(const CohClass& alpha, const CohClass& beta, const Place& v) {
    if (!(alpha.config() == beta.config()))
        throw domain_error("cup product: mismatched configs");
    if (!(alpha.basis() == beta.basis()))
        throw domain_error("cup product: mismatched bases");
    // inv_v(alpha cup beta) = sum_{j,k} (G^{-1})_{jk} log hilbert(alpha_j, beta_k)_v
    auto ginv = f2_invert(weil_gram(alpha.basis()));
    int inv = 0;
    for (std::size_t j = 0; j < ginv.size(); ++j)
        for (std::size_t k = 0; k < ginv.size(); ++k) {
            if (!(ginv[j] >> k & 1)) continue;
            if (alpha.coords()[j].is_trivial() || beta.coords()[k].is_trivial()) continue;
            if (hilbert(Rational(alpha.coords()[j].rep()),
                        Rational(beta.coords()[k].rep()), v) == -1)
                inv ^= 1;
        }
    return inv;
}

bool cup_is_zero(const CohClass& alpha, const CohClass& beta) {
    std::set<Integer> primes = {2};
    for (const auto* cls : {&alpha, &beta})
        for (const auto& c : cls->coords()) {
            Integer r = abs(c.rep());
            for (const auto& [p, e] : factor(r).factors) primes.insert(p);
        }
    for (const auto& p : primes)
        if (cup_local_invariant(alpha, beta, Place::finite(p))) return false;
    return cup_local_invariant(alpha, beta, Place::infinity()) == 0;
}

bool is_nondegenerate(const BVector& beta) {
    return is_nondegenerate(CohClass::from_bvector(beta));
}

bool is_nondegenerate(const CohClass& beta) {
    const int n = static_cast<int>(beta.coords().size());
    return f2_rank(beta.coords()) == n;
}

bool is_unramified_at(const SquareClass& c, const Place& w) {
    if (!w.is_odd())
        throw domain_error("is_unramified_at: criterion stated for odd places only");
    return valuation(c.rep(), w) % 2 == 0;
}

bool is_unramified_at(const CohClass& beta, const Place& w) {
    return std::all_of(beta.coords().begin(), beta.coords().end(),
                       [&](const SquareClass& c) { return is_unramified_at(c, w); });
}

bool local_is_trivial(const SquareClass& c, const Place& w) {
    if (!w.is_odd())
        throw domain_error("local_is_trivial: criterion stated for odd places only");
    return is_local_square(Rational(c.rep()), w);
}

bool local_is_trivial(const CohClass& beta, const Place& w) {
    return std::all_of(beta.coords().begin(), beta.coords().end(),
                       [&](const SquareClass& c) { return local_is_trivial(c, w); });
}

}  // namespace kummerlab
