#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kummerlab/qfield.hpp"

namespace kummerlab {

// Simultaneous diagonal quadrics sum_i forms[m][i] * x_i^2 = 0 in P^{n-1}.
// The local-solubility questions of both the 2-covering conics and the
// Kummer quadric intersection reduce to this shape.

enum class LocalVerdict { soluble, insoluble, undecided };

struct PadicWitness {
    std::vector<long long> point;  // primitive mod p^precision
    int precision = 0;             // k: point satisfies forms mod p^k
    int minor_valuation = 0;       // e: some maximal minor of the Jacobian has v_p = e,
                                   // 2e+1 <= k, so the point lifts to Z_p
};

struct LocalSolveResult {
    LocalVerdict verdict = LocalVerdict::undecided;
    std::optional<PadicWitness> padic;
    // Real place: X >= 0, X != 0 with Q X = 0; a real point is x_i = sqrt(X_i).
    std::optional<std::vector<Rational>> real_squares;
    std::string detail;

    bool soluble() const { return verdict == LocalVerdict::soluble; }
    bool insoluble() const { return verdict == LocalVerdict::insoluble; }
};

struct SolveLimits {
    int max_level = 0;             // 0 = choose from coefficient valuations
    std::size_t max_states = 200000;
    std::size_t max_enumeration = 80000000;  // level-1 fallback budget
};

// Decide existence of a Q_p-point (p finite) of the projective system.
// "insoluble" means the primitive solution tree died out: exhaustive and
// exact. "soluble" always carries a Hensel-certified witness.
LocalSolveResult solve_padic(const std::vector<std::vector<Integer>>& forms,
                             const Integer& p, const SolveLimits& limits = {});

// Decide existence of a real point, exactly: the system has a real
// projective point iff the cone {X >= 0, QX = 0} is nontrivial, which is
// settled by enumerating candidate extreme-ray supports.
LocalSolveResult solve_real(const std::vector<std::vector<Integer>>& forms);

LocalSolveResult solve_local(const std::vector<std::vector<Integer>>& forms,
                             const Place& v, const SolveLimits& limits = {});

// Re-verify a p-adic witness against the forms (used by certificate checks).
bool verify_padic_witness(const std::vector<std::vector<Integer>>& forms,
                          const Integer& p, const PadicWitness& w);
bool verify_real_squares(const std::vector<std::vector<Integer>>& forms,
                         const std::vector<Rational>& squares);

}  // namespace kummerlab
