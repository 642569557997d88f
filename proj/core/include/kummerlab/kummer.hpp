#pragma once

#include "kummerlab/descent.hpp"
#include "kummerlab/localsolve.hpp"
#include "kummerlab/twotorsion.hpp"

namespace kummerlab {

// Data of the quadric-intersection surface in P^5:
// sum_i b_i x_i^2 / f'(a_i) = sum_i a_i b_i x_i^2 / f'(a_i)
//                           = sum_i a_i^2 b_i x_i^2 / f'(a_i) = 0.
struct KummerSpec {
    std::array<Integer, 6> a;
    std::vector<Rational> b;          // 6 nonzero entries
    std::vector<Integer> M;           // optional: 5 odd primes

    KummerSpec(std::array<Integer, 6> roots, std::vector<Rational> classes,
               std::vector<Integer> places = {});
    RootConfig roots() const { return RootConfig::genus2(a); }
    // The b_i define a class in H^1(Q, A[2]) only when their product is a
    // square; the surface equations make sense regardless.
    bool defines_class() const;
    BVector bvector() const { return BVector(roots(), b); }  // throws otherwise
};

// One diagonal quadric in P^5: content 1, first nonzero coefficient positive.
struct QuadricForm {
    std::array<Integer, 6> q;
    bool operator==(const QuadricForm& o) const = default;
};

std::array<QuadricForm, 3> build_equations(const KummerSpec& spec);

std::vector<std::vector<Integer>> as_system(const std::array<QuadricForm, 3>& forms);

struct HypothesisReport {
    bool nondegenerate_ratios = false;      // b_1/b_0..b_4/b_0 independent
    bool valuation_pattern = false;         // val_{w_i}(a_i - a_0) = val_{w_i} d = 1
    bool ratios_units = false;              // ratios units at every w
    bool ratios_not_all_squares = false;    // some ratio a nonresidue at every w
    bool alpha_unramified_nontrivial = false;
    std::string detail;                     // first failure, human-readable
    bool accepted() const {
        return nondegenerate_ratios && valuation_pattern && ratios_units &&
               ratios_not_all_squares && alpha_unramified_nontrivial;
    }
    // Name of the first violated condition, empty when accepted.
    std::string violated() const;
};

HypothesisReport check_hypotheses(const KummerSpec& spec);

struct PlaceVerdict {
    Place place = Place::infinity();
    LocalVerdict verdict = LocalVerdict::undecided;
    std::optional<PadicWitness> witness;
    std::optional<std::vector<Rational>> real_squares;
    std::string reason;
};

struct SolubilityCertificate {
    std::vector<PlaceVerdict> verdicts;
    // Odd places of good reduction above this bound carry F_p-points by the
    // Weil estimates for a smooth quadric-intersection K3 surface.
    Integer good_reduction_bound = 0;
    std::string assumption;
    bool els = false;
    bool undecided = false;
    std::optional<Place> failing_place;
};

PlaceVerdict local_solubility(const std::array<QuadricForm, 3>& forms, const Place& v,
                              const SolveLimits& limits = {});

SolubilityCertificate is_els(const KummerSpec& spec, const SolveLimits& limits = {});

bool verify_certificate(const std::array<QuadricForm, 3>& forms,
                        const SolubilityCertificate& cert);

// Exhaustive primitive search up to max-norm H; lexicographically least
// solution with positive leading sign, if any.
std::optional<std::array<Integer, 6>> search_point(const std::array<QuadricForm, 3>& forms,
                                                   long height_bound);

}  // namespace kummerlab
