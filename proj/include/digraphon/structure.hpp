#ifndef DIGRAPHON_STRUCTURE_HPP
#define DIGRAPHON_STRUCTURE_HPP

#include <vector>

#include "digraphon/core.hpp"

namespace digraphon {

/// Boolean shadow of a step digraphon: adjacency[i][j] iff V[i][j] > tau.
struct SupportDigraph {
  int t = 0;
  std::vector<std::vector<bool>> adjacency;

  bool edge(int u, int v) const { return adjacency[u][v]; }
};

SupportDigraph support_digraph(const StepDigraphon& g,
                               double tau = defaults::kSupportTol);

/// Strong components, fragmented blocks, and both condensation digraphs.
/// Components are listed in a topological order of the condensation; edges
/// of `condensation` / `extended_condensation` use component indices.
struct Decomposition {
  std::vector<std::vector<int>> components;
  std::vector<int> fragmented;
  std::vector<std::pair<int, int>> condensation;
  std::vector<std::pair<int, int>> extended_condensation;
};

Decomposition decompose(const StepDigraphon& g);

/// Exhaustive cross-check of decompose: recomputes components from the
/// symmetrized reachability relation and re-validates strong connectivity of
/// every component over all 2^|X| block bipartitions. t <= 12.
bool verify_decomposition(const StepDigraphon& g);

enum class Direction { Out, In };

/// Blocks reachable by support walks of length >= 1 from (Out) or into (In)
/// the given block set.
std::vector<int> reach(const StepDigraphon& g, const std::vector<int>& from,
                       Direction direction);

/// Walk lengths <= horizon with positive density from one block to another,
/// with the eventual period / shift / onset fitted inside a strong component.
struct ReachabilityProfile {
  int from = 0;
  int to = 0;
  std::vector<int> lengths_observed;
  int eventual_period = 0;  // 0 when from/to are not in one strong component
  int shift = 0;
  int onset = 0;
  bool same_component = false;
};

ReachabilityProfile reachability_profile(const StepDigraphon& g, int i, int j,
                                         int horizon);

/// Period D and cyclic classes P_0..P_{D-1} of a strong component; support
/// edges run P_j -> P_{j+1 mod D}. P_0 holds the lowest-index block.
struct PeriodicStructure {
  int period = 1;
  std::vector<std::vector<int>> classes;
  int canonical_shift = 0;
};

PeriodicStructure period_and_classes(const StepDigraphon& g,
                                     const std::vector<int>& component);

/// True iff every valid ordered class partition of the component is a cyclic
/// shift of the canonical one (exhaustive with pruning; t <= 12).
bool check_class_uniqueness(const StepDigraphon& g,
                            const std::vector<int>& component);

/// Topological order of a fragmented block subset, with the induced support
/// verified nilpotent (its |X|-th boolean power vanishes).
std::vector<int> fragmented_order(const StepDigraphon& g,
                                  const std::vector<int>& x);

/// Checks t(C_k, g) = sum over components of t(C_k, g zeroed outside X_i x
/// X_i) within 1e-10 for 2 <= k <= kmax.
bool cycles_confined_check(const StepDigraphon& g, int kmax);

}  // namespace digraphon

#endif  // DIGRAPHON_STRUCTURE_HPP
