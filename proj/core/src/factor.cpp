#include "kummerlab/factor.hpp"

#include <algorithm>
#include <map>

namespace kummerlab {

namespace {

// Miller-Rabin with the first 13 prime bases is deterministic below
// 3317044064679887385961981 (Sorenson-Webster).
const char* kMRDeterministicBound = "3317044064679887385961981";

bool miller_rabin(const Integer& n, const Integer& base) {
    if (mpz_divisible_p(n.get_mpz_t(), base.get_mpz_t())) return n == base;
    Integer d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    Integer x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

Integer pollard_rho(const Integer& n, unsigned long c, unsigned long budget) {
    // Brent's cycle variant with batched gcds.
    Integer x = 2, y = 2, d = 1, prod = 1;
    auto step = [&](Integer& v) { v = (v * v + c) % n; };
    unsigned long count = 0;
    while (count < budget) {
        step(x);
        step(y);
        step(y);
        Integer diff = x - y;
        if (diff == 0) return 0;  // cycle; retry with another c
        prod = prod * diff % n;
        if (++count % 64 == 0) {
            mpz_gcd(d.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
            if (d != 1) return d == n ? Integer(0) : d;
        }
    }
    mpz_gcd(d.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
    if (d != 1 && d != n) return d;
    return 0;
}

constexpr unsigned long kTrialBound = 1000000;

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    static const Integer bound(kMRDeterministicBound);
    if (n < bound) {
        if (is_certified_prime(n)) {
            ++out[n];
            return;
        }
    } else {
        int r = mpz_probab_prime_p(n.get_mpz_t(), 40);
        if (r == 2) {
            ++out[n];
            return;
        }
        if (r == 1)
            throw unfactored_residue_error(
                "cannot certify primality of " + n.get_str());
        // r == 0: definitely composite, keep splitting
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Integer r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        std::map<Integer, unsigned> sub;
        factor_into(r, sub);
        for (const auto& [p, e] : sub) out[p] += 2 * e;
        return;
    }
    for (unsigned long c = 1; c <= 20; ++c) {
        Integer d = pollard_rho(n, c, 2000000);
        if (d != 0) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
    throw unfactored_residue_error("unfactored residue: " + n.get_str());
}

}  // namespace

bool is_certified_prime(const Integer& n) {
    if (n < 2) return false;
    static const Integer bound(kMRDeterministicBound);
    if (n >= bound)
        throw unfactored_residue_error(
            "primality of " + n.get_str() + " exceeds the certified Miller-Rabin range");
    static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (int b : bases) {
        if (n == b) return true;
        if (!miller_rabin(n, b)) return false;
    }
    return true;
}

Factorization factor(const Integer& n) {
    if (n == 0) throw domain_error("factor: zero input");
    Factorization result;
    result.sign = sgn(n) < 0 ? -1 : 1;
    Integer m = abs(n);

    std::map<Integer, unsigned> fs;
    for (unsigned long p = 2; p <= kTrialBound && m > 1; p += (p == 2 ? 1 : 2)) {
        // Past sqrt(m) the remaining cofactor is prime.
        if (Integer(p) * p > m) {
            ++fs[m];
            m = 1;
            break;
        }
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned e = 0;
        do {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
        fs[Integer(p)] = e;
    }
    if (m > 1) factor_into(m, fs);

    result.factors.assign(fs.begin(), fs.end());
    return result;
}

}  // namespace kummerlab
