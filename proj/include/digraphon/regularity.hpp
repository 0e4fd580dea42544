#ifndef DIGRAPHON_REGULARITY_HPP
#define DIGRAPHON_REGULARITY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "digraphon/core.hpp"

namespace digraphon {

/// Outcome of the weak (Frieze-Kannan style) regularity iteration. `atoms`
/// is the uniform refinement the cells index into; cells have equal size.
struct RegularPartitionResult {
  explicit RegularPartitionResult(StepDigraphon a) : atoms(std::move(a)) {}

  StepDigraphon atoms;
  std::vector<std::vector<int>> cells;
  bool compliant = true;  // false when max_cells stopped the iteration early
  int iterations = 0;
  std::vector<double> energies;  // index-mean-square energy after each step
};

/// Repeatedly locates a cell pair whose deviation kernel has cut norm
/// >= eps t^-2, splits by the certificate's (S, T), and rebalances to
/// equal-size cells (leftover atoms round-robin). Deterministic given seed.
RegularPartitionResult weak_regular_partition(const StepDigraphon& g,
                                              double eps, int max_cells,
                                              std::uint64_t seed = 0);

struct ClusterDigraphResult {
  std::vector<std::vector<int>> partition;  // cells of atom indices
  Eigen::MatrixXd densities;                // p_ij = t^2 integral over Z_i x Z_j
  Digraph digraph;
  double d = 0;
  double eps = 0;
  int min_outdegree = 0;
  bool outdegree_ok = false;  // min outdeg >= (degminOut - d - eps) t
};

/// Builds the (d, eps)-cluster digraph for an equal-size cell partition of a
/// uniform atom refinement: edges where p_ij >= d and the deviation on
/// Z_i x Z_j stays below eps t^-2 in cut norm.
ClusterDigraphResult cluster_digraph(const StepDigraphon& atoms,
                                     const std::vector<std::vector<int>>& cells,
                                     double d, double eps,
                                     std::uint64_t seed = 0);

/// Independent recheck of cluster-digraph conditions: exact cut norms when a
/// cell pair spans <= 24 atoms, randomized certificate probes otherwise.
bool verify_cluster_digraph(const StepDigraphon& atoms,
                            const ClusterDigraphResult& result,
                            std::uint64_t seed = 1);

/// Length of the shortest directed cycle in the support digraph (1 for a
/// self-loop); cross-checked against cycle densities by callers.
int shortest_positive_cycle(const StepDigraphon& g);

}  // namespace digraphon

#endif  // DIGRAPHON_REGULARITY_HPP
