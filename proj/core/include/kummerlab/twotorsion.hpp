#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kummerlab/qfield.hpp"

namespace kummerlab {

// Root set of a split hyperelliptic curve y^2 = prod(x - a_i), g in {1,2}.
// For g = 1 the curve y^2 = (x-c1)(x-c2)(x-c3) is encoded with a formal
// fourth root at infinity, so the root set always has 2g+2 members.
class RootConfig {
public:
    // g = 1: three finite roots plus the formal root at infinity.
    static RootConfig genus1(const std::array<Integer, 3>& c);
    // g = 2: six distinct finite roots.
    static RootConfig genus2(const std::array<Integer, 6>& a);

    int genus() const { return genus_; }
    int size() const { return 2 * genus_ + 2; }  // |W|
    bool has_infinite_root() const { return genus_ == 1; }
    // Finite roots, in input order (3 entries for g=1, 6 for g=2).
    const std::vector<Integer>& finite_roots() const { return roots_; }

    // d = prod_{i<j} (a_j - a_i) over the finite roots.
    const Integer& root_difference_product() const { return diff_prod_; }

    bool operator==(const RootConfig& o) const {
        return genus_ == o.genus_ && roots_ == o.roots_;
    }

private:
    int genus_ = 1;
    std::vector<Integer> roots_;
    Integer diff_prod_;
};

// A 2-torsion point of the Jacobian: an even subset of the root set modulo
// complementation, stored as the representative avoiding the last root.
class TwoTorsionPoint {
public:
    TwoTorsionPoint() = default;  // identity
    TwoTorsionPoint(const RootConfig& cfg, std::uint32_t subset_mask);

    std::uint32_t mask() const { return mask_; }
    bool is_identity() const { return mask_ == 0; }
    int genus() const { return genus_; }

    TwoTorsionPoint operator+(const TwoTorsionPoint& o) const;
    bool operator==(const TwoTorsionPoint& o) const = default;

private:
    std::uint32_t mask_ = 0;
    int genus_ = 1;
};

// All 2^{2g} points of A[2].
std::vector<TwoTorsionPoint> all_two_torsion(const RootConfig& cfg);

// Weil pairing <P,Q> = (-1)^{|S cap T|} on representatives.
int weil_pairing(const TwoTorsionPoint& P, const TwoTorsionPoint& Q);

// A class in H^1(Q, A[2]) presented as a vector (b_0,...,b_{2g+1}) of
// nonzero rationals whose product is a square, defined up to componentwise
// squares and a common scalar.
class BVector {
public:
    BVector(const RootConfig& cfg, std::vector<Rational> b);

    const RootConfig& config() const { return cfg_; }
    const std::vector<Rational>& entries() const { return b_; }

private:
    RootConfig cfg_;
    std::vector<Rational> b_;
};

// The default symplectic-coordinate basis B_i = {a_i, a_last}, i = 0..2g-1.
// For g = 1 these are the classical points T1, T2, so coordinate pairs agree
// with the classical descent map (x - c1, x - c2).
std::vector<TwoTorsionPoint> default_basis(const RootConfig& cfg);

// A class in canonical coordinates: coords[i] = <beta, basis[i]>.
class CohClass {
public:
    CohClass(const RootConfig& cfg, std::vector<TwoTorsionPoint> basis,
             std::vector<SquareClass> coords);
    static CohClass zero(const RootConfig& cfg);
    static CohClass from_bvector(const BVector& b);
    static CohClass from_coords(const RootConfig& cfg, std::vector<SquareClass> coords);

    const RootConfig& config() const { return cfg_; }
    const std::vector<TwoTorsionPoint>& basis() const { return basis_; }
    const std::vector<SquareClass>& coords() const { return coords_; }
    bool is_zero() const;

    CohClass operator+(const CohClass& o) const;  // componentwise product
    bool operator==(const CohClass& o) const;

private:
    RootConfig cfg_;
    std::vector<TwoTorsionPoint> basis_;
    std::vector<SquareClass> coords_;
};

// <beta, P> in Q*/(Q*)^2: for a b-vector, the product of b_i over the
// representative subset of P.
SquareClass pair_h1(const BVector& beta, const TwoTorsionPoint& P);
SquareClass pair_h1(const CohClass& beta, const TwoTorsionPoint& P);

// Boundary map of 2-torsion for g = 1, twisted by a squarefree d (roots
// c_i are replaced by d*c_i; d = 1 is the untwisted map). Returns the
// classical coordinate pair (<delta T, T1>, <delta T, T2>).
std::array<SquareClass, 2> delta_torsion(const RootConfig& curve,
                                         const TwoTorsionPoint& T,
                                         const Integer& d = 1);

// Does the cup product (via the Weil pairing) vanish in H^2(Q, mu_2)?
// Checked place by place over the joint support, by injectivity of
// Br(Q) -> sum of local Brauer groups.
bool cup_is_zero(const CohClass& alpha, const CohClass& beta);

// Local invariant of alpha cup beta at v, as an element of F2.
int cup_local_invariant(const CohClass& alpha, const CohClass& beta, const Place& v);

bool is_nondegenerate(const BVector& beta);
bool is_nondegenerate(const CohClass& beta);

// Ramification and local triviality at an odd finite place.
bool is_unramified_at(const SquareClass& c, const Place& w);
bool is_unramified_at(const CohClass& beta, const Place& w);
bool local_is_trivial(const SquareClass& c, const Place& w);
bool local_is_trivial(const CohClass& beta, const Place& w);

// Gram matrix of the Weil pairing on a basis, as F2 row masks.
std::vector<F2Vec> weil_gram(const std::vector<TwoTorsionPoint>& basis);
// Inverse of an invertible F2 matrix given as row masks.
std::vector<F2Vec> f2_invert(const std::vector<F2Vec>& rows);

}  // namespace kummerlab
