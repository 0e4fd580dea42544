#ifndef DIGRAPHON_CORE_HPP
#define DIGRAPHON_CORE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "digraphon/error.hpp"

namespace digraphon {

namespace defaults {
inline constexpr double kMeasureTol = 1e-12;   // |sum(mu) - 1| bound
inline constexpr double kSupportTol = 1e-12;   // tau_supp: "positive" means > this
inline constexpr int kRefinementCap = 4096;    // max block count after refinement
}  // namespace defaults

/// Finite digraph on vertices 0..n-1. Edges are ordered pairs; (u,v) and
/// (v,u) may coexist. Kept sorted and duplicate-free.
struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
};

/// Step digraphon: blocks with masses mu_i summing to 1 and a t x t value
/// matrix in [0,1]. Immutable after construction.
class StepDigraphon {
 public:
  StepDigraphon(Eigen::VectorXd measures, Eigen::MatrixXd values);

  int block_count() const { return static_cast<int>(measures_.size()); }
  const Eigen::VectorXd& measures() const { return measures_; }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::VectorXd measures_;
  Eigen::MatrixXd values_;
};

/// Step kernel: same block structure but unconstrained real values.
/// Typically a difference of two digraphons on a common block grid.
class Kernel {
 public:
  Kernel(Eigen::VectorXd measures, Eigen::MatrixXd values);

  explicit Kernel(const StepDigraphon& g)
      : Kernel(g.measures(), g.values()) {}

  /// a - b; both inputs must already live on the same measure vector.
  static Kernel difference(const StepDigraphon& a, const StepDigraphon& b);

  int block_count() const { return static_cast<int>(measures_.size()); }
  const Eigen::VectorXd& measures() const { return measures_; }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::VectorXd measures_;
  Eigen::MatrixXd values_;
};

/// Complex step function f in L2, constant on blocks.
using StepFunction = Eigen::VectorXcd;

StepDigraphon from_digraph(const Digraph& g);

StepDigraphon transpose(const StepDigraphon& g);

enum class RestrictMode { ZeroOut, Renormalize };

/// ZeroOut keeps the block grid and zeroes values outside A x A.
/// Renormalize restricts to blocks A with measures mu_i / mu(A).
StepDigraphon restricted(const StepDigraphon& g, const std::vector<int>& blocks,
                         RestrictMode mode);

struct Degrees {
  Eigen::VectorXd out;
  Eigen::VectorXd in;
  double min_out = 0, max_out = 0, min_in = 0, max_in = 0;
};

Degrees degrees(const StepDigraphon& g);

/// Blocks with positive in- or out-degree (strictly above tau).
std::vector<int> ground(const StepDigraphon& g,
                        double tau = defaults::kSupportTol);

/// Split every block into k equal sub-blocks, copying values.
StepDigraphon refine(const StepDigraphon& g, int k,
                     int cap = defaults::kRefinementCap);

/// Re-express both digraphons on the merged breakpoint grid, so that they
/// share one measure vector while representing the same functions.
std::pair<StepDigraphon, StepDigraphon> common_refinement(
    const StepDigraphon& a, const StepDigraphon& b,
    int cap = defaults::kRefinementCap);

/// W-random digraph: block labels from mu, then each ordered pair (u,v),
/// u != v, kept with probability V[block(u)][block(v)].
Digraph sample_digraph(const StepDigraphon& g, int n, std::uint64_t seed);

}  // namespace digraphon

#endif  // DIGRAPHON_CORE_HPP
