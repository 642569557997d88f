#include "kummerlab/kummer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace kummerlab {

KummerSpec::KummerSpec(std::array<Integer, 6> roots, std::vector<Rational> classes,
                       std::vector<Integer> places)
    : a(std::move(roots)), b(std::move(classes)), M(std::move(places)) {
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (a[i] == a[j]) throw domain_error("KummerSpec: repeated roots");
    if (b.size() != 6) throw domain_error("KummerSpec: expected 6 classes");
    for (auto& x : b) {
        if (x == 0) throw domain_error("KummerSpec: zero class entry");
        x.canonicalize();
    }
    if (!M.empty() && M.size() != 5)
        throw domain_error("KummerSpec: M must have 5 places");
    std::sort(M.begin(), M.end());
}

bool KummerSpec::defines_class() const {
    Rational prod = 1;
    for (const auto& x : b) prod *= x;
    return SquareClass(prod).is_trivial();
}

std::array<QuadricForm, 3> build_equations(const KummerSpec& spec) {
    // f'(a_i) = prod_{j != i} (a_i - a_j)
    std::array<Integer, 6> fprime;
    for (int i = 0; i < 6; ++i) {
        fprime[i] = 1;
        for (int j = 0; j < 6; ++j)
            if (j != i) fprime[i] *= spec.a[i] - spec.a[j];
    }
    std::array<QuadricForm, 3> forms;
    for (int k = 0; k < 3; ++k) {
        std::array<Rational, 6> coeff;
        Integer lcm_den = 1;
        for (int i = 0; i < 6; ++i) {
            Rational ak = 1;
            for (int t = 0; t < k; ++t) ak *= Rational(spec.a[i]);
            coeff[i] = spec.b[i] * ak / Rational(fprime[i]);
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
                    coeff[i].get_den().get_mpz_t());
        }
        std::array<Integer, 6> q;
        Integer content = 0;
        for (int i = 0; i < 6; ++i) {
            Rational scaled = coeff[i] * Rational(lcm_den);
            q[i] = scaled.get_num();  // denominator is 1 after scaling
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), q[i].get_mpz_t());
        }
        if (content == 0) throw domain_error("build_equations: zero form");
        int lead_sign = 0;
        for (int i = 0; i < 6 && lead_sign == 0; ++i)
            if (q[i] != 0) lead_sign = sgn(q[i]);
        for (int i = 0; i < 6; ++i) q[i] = q[i] / content * lead_sign;
        forms[k].q = q;
    }
    return forms;
}

std::vector<std::vector<Integer>> as_system(const std::array<QuadricForm, 3>& forms) {
    std::vector<std::vector<Integer>> sys;
    for (const auto& f : forms) sys.emplace_back(f.q.begin(), f.q.end());
    return sys;
}

std::string HypothesisReport::violated() const {
    if (!nondegenerate_ratios) return "nondegenerate_ratios";
    if (!valuation_pattern) return "valuation_pattern";
    if (!ratios_units) return "ratios_units";
    if (!ratios_not_all_squares) return "ratios_not_all_squares";
    if (!alpha_unramified_nontrivial) return "alpha_unramified_nontrivial";
    return "";
}

HypothesisReport check_hypotheses(const KummerSpec& spec) {
    HypothesisReport rep;
    if (spec.M.size() != 5) throw domain_error("check_hypotheses: M is required");
    if (!spec.defines_class())
        throw domain_error("check_hypotheses: the product of the b_i must be a square");

    std::vector<SquareClass> ratios;
    for (int i = 1; i <= 4; ++i) ratios.push_back(SquareClass(spec.b[i] / spec.b[0]));

    // (i) nondegeneracy of b_1/b_0, ..., b_4/b_0
    rep.nondegenerate_ratios = f2_rank(ratios) == 4;
    if (!rep.nondegenerate_ratios)
        rep.detail = "classes b_1/b_0..b_4/b_0 are F2-dependent";

    // (ii) at w_i exactly the pair {a_0, a_i} collides with valuation 1
    // (equivalently val_{w_i} d = 1): this is the extended 2-structure
    // pattern of the genus-2 Jacobian, delegated to the descent checker.
    TwoStructureResult ts = check_two_structure(spec.roots(), spec.M);
    rep.valuation_pattern = ts.accepted();
    if (!ts.accepted() && rep.detail.empty()) rep.detail = ts.detail;

    // (iii) ratios are units at each w; (iv) not all squares at each w;
    // (v) the class is unramified with nontrivial local image at each w.
    rep.ratios_units = true;
    rep.ratios_not_all_squares = true;
    for (const auto& w : spec.M) {
        if (w == 2 || !is_certified_prime(w)) break;
        Place v = Place::finite(w);
        bool units_here = std::all_of(ratios.begin(), ratios.end(), [&](const SquareClass& r) {
            return valuation(r.rep(), v) == 0;
        });
        if (!units_here) {
            rep.ratios_units = false;
            if (rep.detail.empty())
                rep.detail = "some ratio b_i/b_0 is not a unit at w=" + w.get_str();
            continue;
        }
        bool some_nonsquare = std::any_of(ratios.begin(), ratios.end(),
                                          [&](const SquareClass& r) {
                                              return legendre(r.rep(), w) == -1;
                                          });
        if (!some_nonsquare) {
            rep.ratios_not_all_squares = false;
            if (rep.detail.empty())
                rep.detail = "all ratios are squares at w=" + w.get_str();
        }
    }

    // (v) in canonical coordinates the class alpha has the ratios as its
    // coordinates up to an invertible change of basis, so unramified and
    // locally nontrivial reduce to the unit/nonresidue checks done above.
    if (rep.ratios_units && rep.ratios_not_all_squares) {
        CohClass alpha = CohClass::from_bvector(spec.bvector());
        rep.alpha_unramified_nontrivial = true;
        for (const auto& w : spec.M) {
            Place v = Place::finite(w);
            if (!is_unramified_at(alpha, v) || local_is_trivial(alpha, v)) {
                rep.alpha_unramified_nontrivial = false;
                if (rep.detail.empty())
                    rep.detail = "class is ramified or locally trivial at w=" + w.get_str();
                break;
            }
        }
    }
    return rep;
}

PlaceVerdict local_solubility(const std::array<QuadricForm, 3>& forms, const Place& v,
                              const SolveLimits& limits) {
    PlaceVerdict out{v, LocalVerdict::undecided, std::nullopt, std::nullopt, {}};
    LocalSolveResult res = solve_local(as_system(forms), v, limits);
    out.verdict = res.verdict;
    out.witness = res.padic;
    out.real_squares = res.real_squares;
    out.reason = res.detail;
    return out;
}

namespace {

// Weil bound for a smooth quadric-intersection K3 surface over F_p:
// |#X(F_p) - (p^2 + 1)| <= 22 p, so points exist once p^2 - 22p + 1 > 0.
const long kGoodReductionBound = 23;

std::set<Integer> bad_primes(const KummerSpec& spec) {
    std::set<Integer> out = {Integer(2)};
    RootConfig rc = spec.roots();
    for (const auto& [p, e] : factor(rc.root_difference_product()).factors) out.insert(p);
    for (const auto& x : spec.b) {
        for (const auto& [p, e] : factor(x.get_num()).factors) out.insert(p);
        for (const auto& [p, e] : factor(x.get_den()).factors) out.insert(p);
    }
    return out;
}

}  // namespace

SolubilityCertificate is_els(const KummerSpec& spec, const SolveLimits& limits) {
    auto forms = build_equations(spec);
    SolubilityCertificate cert;
    cert.good_reduction_bound = kGoodReductionBound;
    cert.assumption =
        "odd places of good reduction with p >= 23 are soluble: the reduction "
        "is a smooth quadric-intersection K3 surface, whose F_p-point count "
        "exceeds p^2 - 22p + 1 > 0, and smooth points lift";

    std::set<Integer> places = bad_primes(spec);
    for (long p = 3; p < kGoodReductionBound; p += 2)
        if (is_certified_prime(p)) places.insert(p);

    bool any_undecided = false;
    auto record = [&](const PlaceVerdict& v) {
        cert.verdicts.push_back(v);
        if (v.verdict == LocalVerdict::insoluble && !cert.failing_place)
            cert.failing_place = v.place;
        if (v.verdict == LocalVerdict::undecided) any_undecided = true;
    };
    record(local_solubility(forms, Place::infinity(), limits));
    for (const auto& p : places) record(local_solubility(forms, Place::finite(p), limits));
    // An insoluble place settles the question even if another place stayed
    // undecided; the certificate is inconclusive only without one.
    cert.els = !cert.failing_place && !any_undecided;
    cert.undecided = !cert.failing_place && any_undecided;
    return cert;
}

bool verify_certificate(const std::array<QuadricForm, 3>& forms,
                        const SolubilityCertificate& cert) {
    auto sys = as_system(forms);
    for (const auto& v : cert.verdicts) {
        if (v.verdict != LocalVerdict::soluble) continue;
        if (v.place.is_infinite()) {
            if (!v.real_squares || !verify_real_squares(sys, *v.real_squares)) return false;
        } else {
            if (!v.witness || !verify_padic_witness(sys, v.place.prime(), *v.witness))
                return false;
        }
    }
    return true;
}

std::optional<std::array<Integer, 6>> search_point(const std::array<QuadricForm, 3>& forms,
                                                   long height_bound) {
    if (height_bound < 1) throw domain_error("search_point: height bound must be >= 1");
    const long H = height_bound;
    std::optional<std::array<Integer, 6>> best;
    std::array<long, 6> x{};
    // Coordinates ordered by absolute value, positive before negative, so
    // the reported point is the least in the magnitude-then-sign sense.
    auto coord_less = [](const Integer& a, const Integer& b) {
        int c = cmp(abs(a), abs(b));
        if (c != 0) return c < 0;
        return a > b;  // positive representative first
    };
    auto consider = [&](const std::array<long, 6>& cand) {
        long g = 0;
        for (long c : cand) g = std::gcd(g, std::abs(c));
        if (g == 0) return;
        std::array<Integer, 6> pt;
        int lead = 0;
        for (int i = 0; i < 6; ++i) pt[i] = cand[i] / g;
        for (int i = 0; i < 6 && lead == 0; ++i) lead = sgn(pt[i]);
        if (lead < 0)
            for (auto& c : pt) c = -c;
        if (!best || std::lexicographical_compare(pt.begin(), pt.end(), best->begin(),
                                                  best->end(), coord_less))
            best = pt;
    };
    // Solve the first form for x_5 where possible, check the others.
    std::function<void(int)> rec = [&](int i) {
        if (i == 5) {
            // q0*x5^2 = -partial
            Integer partial = 0;
            for (int j = 0; j < 5; ++j) partial += forms[0].q[j] * x[j] * x[j];
            const Integer& q5 = forms[0].q[5];
            if (q5 == 0) {
                if (partial != 0) return;
                for (long v = -H; v <= H; ++v) {
                    x[5] = v;
                    Integer s1 = 0, s2 = 0;
                    for (int j = 0; j < 6; ++j) {
                        s1 += forms[1].q[j] * x[j] * x[j];
                        s2 += forms[2].q[j] * x[j] * x[j];
                    }
                    if (s1 == 0 && s2 == 0) consider(x);
                }
                return;
            }
            Integer num = -partial;
            if (num % q5 != 0) return;
            Integer sq = num / q5;
            if (sq < 0) return;
            if (!mpz_perfect_square_p(sq.get_mpz_t())) return;
            Integer root;
            mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
            if (root > H) return;
            for (int sign = 0; sign < (root == 0 ? 1 : 2); ++sign) {
                x[5] = (sign ? -root : root).get_si();
                Integer s1 = 0, s2 = 0;
                for (int j = 0; j < 6; ++j) {
                    s1 += forms[1].q[j] * x[j] * x[j];
                    s2 += forms[2].q[j] * x[j] * x[j];
                }
                if (s1 == 0 && s2 == 0) consider(x);
            }
            return;
        }
        for (long v = -H; v <= H; ++v) {
            x[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return best;
}

}  // namespace kummerlab
