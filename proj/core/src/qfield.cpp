#include "kummerlab/qfield.hpp"

#include <algorithm>
#include <set>

namespace kummerlab {

Place Place::finite(Integer p) {
    if (p < 2 || !is_certified_prime(p))
        throw domain_error("Place: " + p.get_str() + " is not prime");
    Place v;
    v.p_ = std::move(p);
    return v;
}

const Integer& Place::prime() const {
    if (!p_) throw domain_error("Place: infinite place has no prime");
    return *p_;
}

std::strong_ordering Place::operator<=>(const Place& o) const {
    if (is_infinite() && o.is_infinite()) return std::strong_ordering::equal;
    if (is_infinite()) return std::strong_ordering::greater;
    if (o.is_infinite()) return std::strong_ordering::less;
    return cmp(*p_, *o.p_) <=> 0;
}

SquareClass::SquareClass(const Integer& n) {
    if (n == 0) throw domain_error("SquareClass: zero has no square class");
    rep_ = 1;
    for (const auto& [p, e] : factor(n).factors)
        if (e % 2) rep_ *= p;
    if (n < 0) rep_ = -rep_;
}

SquareClass::SquareClass(const Rational& q)
    : SquareClass(Integer(q.get_num() * q.get_den())) {}

SquareClass SquareClass::operator*(const SquareClass& o) const {
    // gcd of squarefree representatives carries exactly the cancelling primes.
    Integer g;
    mpz_gcd(g.get_mpz_t(), rep_.get_mpz_t(), o.rep_.get_mpz_t());
    SquareClass r;
    r.rep_ = rep_ / g * (o.rep_ / g);
    return r;
}

std::vector<Integer> SquareClass::support() const {
    std::vector<Integer> out;
    for (const auto& [p, e] : factor(rep_).factors)
        if (p != 2) out.push_back(p);
    return out;
}

PrimeBasis::PrimeBasis(const std::vector<SquareClass>& classes) {
    std::set<Integer> ps;
    for (const auto& c : classes)
        for (const auto& p : c.support()) ps.insert(p);
    primes_.assign(ps.begin(), ps.end());
}

F2Vec PrimeBasis::vector_of(const SquareClass& c) const {
    F2Vec v = 0;
    Integer r = c.rep();
    if (r < 0) {
        v |= 1;
        r = -r;
    }
    if (r % 2 == 0) {
        v |= 2;
        r /= 2;
    }
    for (std::size_t i = 0; i < primes_.size() && r > 1; ++i)
        if (mpz_divisible_p(r.get_mpz_t(), primes_[i].get_mpz_t())) {
            v |= F2Vec(1) << (2 + i);
            r /= primes_[i];
        }
    if (r != 1)
        throw domain_error("PrimeBasis: class " + c.str() + " not supported on basis");
    return v;
}

int f2_rank(const std::vector<SquareClass>& classes) {
    PrimeBasis basis(classes);
    std::vector<F2Vec> vecs;
    vecs.reserve(classes.size());
    for (const auto& c : classes) vecs.push_back(basis.vector_of(c));
    return f2_rank(vecs);
}

long valuation(const Rational& q, const Place& p) {
    if (q == 0) throw domain_error("valuation: zero input");
    if (p.is_infinite()) throw domain_error("valuation: infinite place");
    Integer dummy;
    long vnum = mpz_remove(dummy.get_mpz_t(), q.get_num().get_mpz_t(),
                           p.prime().get_mpz_t());
    long vden = mpz_remove(dummy.get_mpz_t(), q.get_den().get_mpz_t(),
                           p.prime().get_mpz_t());
    return vnum - vden;
}

long valuation(const Integer& n, const Place& p) { return valuation(Rational(n), p); }

SquareClass squarefree_part(const Rational& q) { return SquareClass(q); }
SquareClass squarefree_part(const Integer& n) { return SquareClass(n); }

int legendre(const Integer& a, const Integer& p) {
    if (p == 2 || !is_certified_prime(p))
        throw domain_error("legendre: modulus " + p.get_str() + " is not an odd prime");
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

namespace {

// Unit part of q at p together with the valuation: q = p^v * u.
std::pair<long, Rational> split_at(const Rational& q, const Integer& p) {
    Integer num = q.get_num(), den = q.get_den(), reduced;
    long vnum = mpz_remove(reduced.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    num = reduced;
    long vden = mpz_remove(reduced.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    den = reduced;
    Rational u(num, den);
    u.canonicalize();
    return {vnum - vden, u};
}

// Residue of a p-adic unit u modulo p^k as an integer in [0, p^k).
Integer unit_mod(const Rational& u, const Integer& pk) {
    Integer den_inv;
    if (!mpz_invert(den_inv.get_mpz_t(), u.get_den().get_mpz_t(), pk.get_mpz_t()))
        throw domain_error("unit_mod: denominator not invertible");
    Integer r = u.get_num() * den_inv % pk;
    if (r < 0) r += pk;
    return r;
}

// eps(u) = (u-1)/2 mod 2, omega(u) = (u^2-1)/8 mod 2, for odd 2-adic units.
int eps_mod2(const Integer& u_mod8) { return (u_mod8 == 3 || u_mod8 == 7) ? 1 : 0; }
int omega_mod2(const Integer& u_mod8) { return (u_mod8 == 3 || u_mod8 == 5) ? 1 : 0; }

}  // namespace

bool is_local_square(const Rational& a, const Place& v) {
    if (a == 0) throw domain_error("is_local_square: zero input");
    if (v.is_infinite()) return a > 0;
    const Integer& p = v.prime();
    auto [val, u] = split_at(a, p);
    if (val % 2) return false;
    if (p == 2) return unit_mod(u, 8) == 1;
    return legendre(unit_mod(u, p), p) == 1;
}

int hilbert(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw domain_error("hilbert: zero argument");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
    const Integer& p = v.prime();
    auto [alpha, u] = split_at(a, p);
    auto [beta, w] = split_at(b, p);
    if (p == 2) {
        // (a,b)_2 = (-1)^{eps(u)eps(w) + alpha*omega(w) + beta*omega(u)}
        Integer u8 = unit_mod(u, 8), w8 = unit_mod(w, 8);
        int e = eps_mod2(u8) * eps_mod2(w8) + (alpha & 1) * omega_mod2(w8) +
                (beta & 1) * omega_mod2(u8);
        return e % 2 ? -1 : 1;
    }
    // (a,b)_p = (-1|p)^{alpha beta} (u|p)^beta (w|p)^alpha
    int e = 0;
    if ((alpha & 1) && (beta & 1) && p % 4 == 3) e ^= 1;
    if (beta & 1) e ^= legendre(unit_mod(u, p), p) == -1;
    if (alpha & 1) e ^= legendre(unit_mod(w, p), p) == -1;
    return e ? -1 : 1;
}

std::vector<Place> hilbert_support(const Rational& a, const Rational& b) {
    std::set<Integer> primes = {2};
    for (const Rational* q : {&a, &b}) {
        for (const auto& [p, e] : factor(q->get_num()).factors) primes.insert(p);
        for (const auto& [p, e] : factor(q->get_den()).factors) primes.insert(p);
    }
    std::vector<Place> out;
    for (const auto& p : primes) out.push_back(Place::finite(p));
    out.push_back(Place::infinity());
    return out;
}

}  // namespace kummerlab
