#ifndef DIGRAPHON_METRIC_HPP
#define DIGRAPHON_METRIC_HPP

#include <cstdint>
#include <vector>

#include "digraphon/core.hpp"

namespace digraphon {

/// Witness for a cut-norm value: value = |sum_{i in S, j in T} mu_i mu_j
/// K_ij| recomputed exactly from (S, T).
struct CutCertificate {
  double value = 0;
  std::vector<int> s;
  std::vector<int> t;
};

enum class CutMode { Exact, Heuristic };

/// Recomputes a certificate's value from scratch.
double certificate_value(const Kernel& k, const std::vector<int>& s,
                         const std::vector<int>& t);

/// Cut norm over block-set pairs. For step kernels the objective is bilinear
/// in fractional memberships, so a 0/1 corner attains the supremum over
/// measurable sets; exact mode enumerates S (2^t, t <= 24) and picks T per
/// column sign. Heuristic mode (simulated annealing plus alternating
/// maximization) yields a valid lower-bound certificate.
CutCertificate cut_norm(const Kernel& k, CutMode mode, std::uint64_t seed = 0);

struct CutDistanceResult {
  double upper_bound = 0;        // min over tried permutations of exact norms
  std::vector<int> permutation;  // relabeling applied to the second input
};

/// Cut distance upper bound over block permutations after re-expressing both
/// inputs on a shared equal-measure grid. Exact mode enumerates all
/// permutations (grid size <= 10); heuristic mode anneals over permutations.
/// The reported value is always an exact cut norm of the best permutation,
/// hence a true upper bound on the cut distance.
CutDistanceResult cut_distance(const StepDigraphon& a, const StepDigraphon& b,
                               CutMode mode, std::uint64_t seed = 0);

struct CountingLemmaReport {
  double lhs = 0;  // |t(D, a) - t(D, b)|
  double rhs = 0;  // e(D) x cut-distance upper bound
  bool holds = false;
};

/// Checks |t(D,a) - t(D,b)| <= e(D) d_cut(a,b) for oriented D. Rejects any
/// counterparallel edge pair; the inequality fails only on implementation
/// bugs since the distance used is an upper bound.
CountingLemmaReport counting_lemma_check(const Digraph& d,
                                         const StepDigraphon& a,
                                         const StepDigraphon& b);

/// Both inputs re-expressed on one grid of n equal-measure blocks.
/// Internal to cut_distance but exposed for the regularity module and tests.
std::pair<StepDigraphon, StepDigraphon> equal_measure_grid(
    const StepDigraphon& a, const StepDigraphon& b,
    int cap = defaults::kRefinementCap);

}  // namespace digraphon

#endif  // DIGRAPHON_METRIC_HPP
