#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <utility>
#include <vector>

namespace kummerlab {

using Integer = mpz_class;
using Rational = mpq_class;

class domain_error : public std::domain_error {
    using std::domain_error::domain_error;
};

// Residue that survived trial division and Pollard rho without a primality
// certificate. Raised instead of guessing.
class unfactored_residue_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Factorization {
    int sign = 1;  // +1 or -1
    std::vector<std::pair<Integer, unsigned>> factors;  // primes strictly increasing

    Integer value() const {
        Integer v = sign;
        for (const auto& [p, e] : factors)
            for (unsigned i = 0; i < e; ++i) v *= p;
        return v;
    }
};

// Deterministic primality for n < 3.3e24 (fixed Miller-Rabin base set);
// inputs beyond that bound are rejected as uncertifiable.
bool is_certified_prime(const Integer& n);

Factorization factor(const Integer& n);

}  // namespace kummerlab
