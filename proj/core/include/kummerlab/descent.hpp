#pragma once

#include <optional>

#include "kummerlab/localsolve.hpp"
#include "kummerlab/twotorsion.hpp"

namespace kummerlab {

class inconsistent_conditions_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class search_exhausted_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class undecided_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// y^2 = (x - c1)(x - c2)(x - c3) with distinct integer roots, optionally
// twisted by a squarefree d (the twisted model has roots d*c_i).
struct EllipticCurveFull2 {
    std::array<Integer, 3> c;
    Integer d = 1;

    EllipticCurveFull2(std::array<Integer, 3> roots, Integer twist = 1);

    EllipticCurveFull2 twisted(const Integer& twist) const {
        return EllipticCurveFull2(c, twist);
    }
    RootConfig roots() const;  // twisted roots
    Integer discriminant() const;  // 16 prod (d c_i - d c_j)^2
    // Odd primes of bad reduction of the twisted model.
    std::vector<Integer> bad_odd_primes() const;
};

// F2 coordinates on Q_v^* / (Q_v^*)^2: dimension 2 at odd p (nonresidue,
// uniformizer), 3 at p = 2 (-1, 5, 2) and 1 at the real place (sign).
class LocalSquares {
public:
    explicit LocalSquares(const Place& v);
    const Place& place() const { return v_; }
    int dim() const;
    F2Vec coords(const SquareClass& c) const;
    SquareClass rep(F2Vec coords) const;  // canonical squarefree representative

private:
    Place v_;
    Integer nonresidue_ = 0;
};

using CoordinatePair = std::array<SquareClass, 2>;

// The Selmer condition subspace W_v inside H^1(Q_v, E[2]) = (Q_v^*/sq)^2.
class LocalSubspace {
public:
    LocalSubspace(const Place& v, std::vector<CoordinatePair> basis);

    const Place& place() const { return squares_.place(); }
    int ambient_dim() const { return 2 * squares_.dim(); }
    int dim() const { return span_.dim(); }
    const std::vector<CoordinatePair>& basis() const { return basis_; }
    const LocalSquares& squares() const { return squares_; }

    F2Vec localize(const CoordinatePair& x) const;
    bool contains(const CoordinatePair& x) const { return span_.contains(localize(x)); }
    const F2Span& span() const { return span_; }

private:
    LocalSquares squares_;
    std::vector<CoordinatePair> basis_;
    F2Span span_;
};

// Local cup-product pairing via the Weil pairing: the sum of the Hilbert
// symbols of the cross coordinates, as an element of F2.
int local_pairing(const CoordinatePair& x, const CoordinatePair& y, const Place& v);

// delta(E(Q_v)/2E(Q_v)): enumerate every candidate class pair and test
// solubility of the homogeneous space, together with the torsion and
// trivial cosets. Dimension is checked against the forced value
// {2 at odd p, 3 at p=2, 1 at infinity}.
LocalSubspace local_image(const EllipticCurveFull2& E, const Place& v);

struct SelmerGroup {
    EllipticCurveFull2 curve;
    std::vector<Integer> support;  // -1, 2, then odd bad primes
    std::vector<CoordinatePair> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

// 2-Selmer group of the twist E^d, by F2 kernel computation over classes
// supported on {-1, 2} u {bad primes}, with the local condition imposed at
// every place of S u {infinity}. Extra good odd primes may be added to the
// support (widening); the resulting group must not change, which the tests
// use to validate the support restriction.
SelmerGroup selmer_group(const EllipticCurveFull2& E, const Integer& d = 1,
                         const std::vector<Integer>& widen_support = {});

struct MazurRubinPlace {
    Integer w;
    int dim_W;
    int dim_U;     // dim of U_w = W_w cap W_w^d
    int dim_Wbar;  // dim_W - dim_U
    std::vector<CoordinatePair> U_basis;
};

struct MazurRubinReport {
    Integer d;
    std::vector<Integer> T;
    int r = 0;
    int dim_VT = 0;
    int dim_VT_twist = 0;
    int gap = 0;  // r - dim_VT - dim_VT_twist, provably even and >= 0
    int dim_sel = 0;
    int dim_sel_twist = 0;
    std::vector<MazurRubinPlace> places;
};

// Compare Selmer structures of E and E^d over the odd place set T.
// Throws "uncompared place" if the local conditions differ anywhere
// outside T.
MazurRubinReport twist_report(const EllipticCurveFull2& E, const Integer& d,
                              const std::vector<Integer>& T);

struct PlaceCertificate {
    Integer w;
    int curve_index = 0;                // which factor is multiplicative at w
    std::array<int, 2> colliding_pair;  // root indices with val_w(difference) = 1
    // P_w: the torsion point pairing -1 exactly with the classes whose
    // reduction hits the nontrivial component, i.e. the colliding-pair point.
    TwoTorsionPoint P_w;
};

struct TwoStructure {
    std::vector<EllipticCurveFull2> curves;      // empty for a genus-2 Jacobian
    std::optional<RootConfig> jacobian;          // set for the genus-2 case
    std::vector<Integer> M;  // sorted odd primes
    bool extended = false;
    std::vector<PlaceCertificate> certificates;  // parallel to M
};

struct TwoStructureResult {
    std::optional<TwoStructure> certificate;
    std::string violated_condition;  // empty iff accepted
    std::string detail;
    bool accepted() const { return certificate.has_value(); }
};

TwoStructureResult check_two_structure(const std::vector<EllipticCurveFull2>& curves,
                                       const std::vector<Integer>& M, bool extended);

// Genus-2 Jacobian (six roots): verifies the valuation pattern
// val_{w_i}(a_i - a_0) = val_{w_i}(d) = 1 with distinct partner roots over
// the five places; this is the extended 2-structure shape the Kummer
// hypothesis checks rely on.
TwoStructureResult check_two_structure(const RootConfig& jacobian,
                                       const std::vector<Integer>& M);

// Does the reduction of Q land on the nontrivial component of C_w/2C_w?
// Valuation criterion: the subset of Q separates the colliding root pair.
bool reduces_nontrivially(const TwoTorsionPoint& Q, const PlaceCertificate& cert);

struct AdmissibilityReport {
    bool admissible = true;
    // violating exponent pattern (f, h), when not admissible
    std::optional<std::pair<F2Vec, F2Vec>> witness;
};

// Definition-chasing check over a certified (non-extended) 2-structure:
// every F2 relation among the classes <alpha,P_w>, <delta(P_w),P_u> must be
// matched by a trivial product of the corresponding Weil pairings.
AdmissibilityReport is_admissible(const TwoStructure& ts,
                                  const std::vector<CohClass>& alpha_parts);

struct SymbolCondition {
    SquareClass cls;
    int required;  // +1 or -1
};

// Least odd prime p <= bound, coprime to every class support, with
// legendre(cls, p) = required for each condition. Consistency of the
// conditions is checked first (a dependent subset forcing -1 means no such
// Frobenius exists).
Integer find_prime(const std::vector<SymbolCondition>& conditions, const Integer& bound);

}  // namespace kummerlab
