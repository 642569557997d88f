#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "kummerlab/f2.hpp"
#include "kummerlab/factor.hpp"

namespace kummerlab {

// A place of Q: a finite prime (checked on construction) or the real place.
class Place {
public:
    static Place infinity() { return Place(); }
    static Place finite(Integer p);

    bool is_infinite() const { return !p_.has_value(); }
    bool is_finite() const { return p_.has_value(); }
    bool is_odd() const { return is_finite() && *p_ != 2; }
    const Integer& prime() const;

    bool operator==(const Place& o) const { return p_ == o.p_; }
    // Finite places ordered by prime, infinity last.
    std::strong_ordering operator<=>(const Place& o) const;

    std::string str() const { return is_infinite() ? "inf" : p_->get_str(); }

private:
    Place() = default;
    std::optional<Integer> p_;
};

// An element of Q*/(Q*)^2: the unique squarefree integer representative,
// sign included. The class of 1 is the identity.
class SquareClass {
public:
    SquareClass() : rep_(1) {}
    explicit SquareClass(const Integer& n);  // reduces n to its squarefree part
    explicit SquareClass(const Rational& q);

    const Integer& rep() const { return rep_; }
    bool is_trivial() const { return rep_ == 1; }

    SquareClass operator*(const SquareClass& o) const;
    bool operator==(const SquareClass& o) const { return rep_ == o.rep_; }
    bool operator<(const SquareClass& o) const { return rep_ < o.rep_; }

    // Odd primes dividing the representative (the finite support).
    std::vector<Integer> support() const;

    std::string str() const { return rep_.get_str(); }

private:
    Integer rep_;
};

// Shared odd-prime-and-sign basis used to turn square classes into F2
// vectors: bit 0 is the sign, bit 1 the exponent of 2, later bits one per
// listed odd prime. Nondegeneracy and all independence checks reduce to
// ranks of these vectors.
class PrimeBasis {
public:
    explicit PrimeBasis(const std::vector<SquareClass>& classes);

    F2Vec vector_of(const SquareClass& c) const;  // throws if support not covered
    int dim() const { return 2 + static_cast<int>(primes_.size()); }
    const std::vector<Integer>& odd_primes() const { return primes_; }

private:
    std::vector<Integer> primes_;  // odd, strictly increasing
};

int f2_rank(const std::vector<SquareClass>& classes);

// p-adic valuation of a nonzero rational.
long valuation(const Rational& q, const Place& p);
long valuation(const Integer& n, const Place& p);

SquareClass squarefree_part(const Rational& q);
SquareClass squarefree_part(const Integer& n);

// Legendre symbol (a|p) for an odd prime p.
int legendre(const Integer& a, const Integer& p);

// Is the nonzero rational a a square in Q_v?
bool is_local_square(const Rational& a, const Place& v);

// Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
// solution over Q_v. At v=2 the epsilon/omega closed formulas are used.
int hilbert(const Rational& a, const Rational& b, const Place& v);

// Places where (a,b)_v could be nontrivial: odd primes of the joint support
// plus 2 and infinity.
std::vector<Place> hilbert_support(const Rational& a, const Rational& b);

}  // namespace kummerlab
