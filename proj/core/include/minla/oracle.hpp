#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "minla/arrangement.hpp"
#include "minla/instance.hpp"
#include "minla/permutation.hpp"
#include "minla/rational.hpp"

namespace minla {

/// Offline optimum: its cost and one final permutation realizing it.
struct OptResult {
    Cost cost = 0;
    Permutation witness;
};

/// Cheapest single move from pi0 to a permutation that is a MinLA of every
/// revealed graph of the trace.
///
/// Lines: the final paths, each in its closer orientation, ordered by the
/// exact block search. Cliques: every intermediate clique must stay
/// contiguous, so each binary merge picks the cheaper order of its two child
/// blocks (the cross inversions depend only on the node sets), then the
/// final cliques are ordered by the block search.
OptResult dp_opt(const RevealTrace& trace, std::size_t cap = kDefaultItemCap);

inline constexpr std::size_t kExhaustiveMaxNodes = 7;

/// True optimum over all schedules: shortest path through the layers
/// MinLA(G_0) = {pi0}, MinLA(G_1), ..., MinLA(G_k) with Kendall-tau edge
/// weights. Throws InvalidInput for n > kExhaustiveMaxNodes.
OptResult exhaustive_opt(const RevealTrace& trace);

/// Probability that RAND keeps component X left of component Y:
/// |X x Y n L_pi0| / (|X| |Y|). Throws InvalidInput if X, Y overlap or one
/// is empty.
Rational left_right_probability(std::span<const NodeId> x, std::span<const NodeId> y, const Permutation& pi0);

/// Probability that RAND lays the path in the given node order:
/// |L_path n L_pi0| / C(|path|, 2). Throws InvalidInput for fewer than two
/// nodes.
Rational orientation_probability(std::span<const NodeId> path, const Permutation& pi0);

/// Expected-cost ceiling 4 H_n * opt (cliques) or 8 H_n * opt (lines).
double bound_for_trace(const RevealTrace& trace, const OptResult& opt);

// ---------------------------------------------------------------------------
// harmonic sums and the algebraic lemmas behind the bounds

inline constexpr std::uint64_t kExactHarmonicLimit = 10'000;

struct HarmonicNumber {
    std::optional<BigRational> exact;  // set while S <= kExactHarmonicLimit
    double value = 0.0;
};

/// H_S = 1 + 1/2 + ... + 1/S; H_0 = 0.
HarmonicNumber harmonic_number(std::uint64_t s);

struct HarmonicBoundCheck {
    bool prefix_ratio = false;      // sum s_i / P_i <= H_S
    bool squared_merge = false;     // sum_{i>=2} s_i^2 / C(P_i, 2) <= 2 H_S
    bool adjacent_product = false;  // sum_{i>=2} s_{i-1} s_i / C(P_i, 2) <= 2 H_S

    bool all() const noexcept { return prefix_ratio && squared_merge && adjacent_product; }
};

/// Checks the three harmonic-sum inequalities exactly for a series of
/// positive integers, with P_i = s_1 + ... + s_i and S = P_N. The two
/// merge sums start at i = 2: the first term is the component that the
/// later ones merge into.
HarmonicBoundCheck check_harmonic_bounds(std::span<const std::uint64_t> series);

struct IdentityCheck {
    double expectation_lhs = 0.0;  // sum_t [sum_i t_i a_i] P(t)
    double expectation_rhs = 0.0;  // sum_i a_i b_i
    double product_lhs = 0.0;      // sum_t [sum_i (1-t_i) a_i][sum_i t_i a_i] P(t)
    double product_rhs = 0.0;      // sum_i b_i a_i (A - a_i)
    bool expectation_identity = false;
    bool product_bound = false;
};

inline constexpr std::size_t kIdentityMaxTerms = 12;
inline constexpr double kIdentityTolerance = 1e-9;

/// Evaluates both sides of the two Bernoulli-sum lemmas by enumerating all
/// t in {0,1}^N, where P(t) = prod b_j^t_j (1-b_j)^(1-t_j). The product
/// bound needs nonnegative a. Throws InvalidInput for N > 12, mismatched
/// lengths or b outside [0, 1].
IdentityCheck check_identity_lemmas(std::span<const double> a, std::span<const double> b);

}  // namespace minla
