#ifndef DIGRAPHON_DENSITIES_HPP
#define DIGRAPHON_DENSITIES_HPP

#include <cstdint>

#include "digraphon/core.hpp"

namespace digraphon {

/// k-th power: V_k = V (diag(mu) V)^(k-1). Matches operator powers of the
/// induced integral operator; values stay in [0,1].
StepDigraphon power(const StepDigraphon& g, int k);

/// Same recurrence on an unconstrained kernel.
Kernel power(const Kernel& k, int exponent);

enum class Side { Left, Right };

/// Left: (T f)(j) = sum_i mu_i V[i][j] f_i. Right applies the transpose.
StepFunction apply(const StepDigraphon& g, const StepFunction& f, Side side);

struct DensityReport {
  double value = 0;
  long long assignment_count = 0;
};

/// t(D, g): full enumeration over block maps, cost t^{|V(D)|}.
DensityReport hom_density(const Digraph& d, const StepDigraphon& g,
                          int max_vertices = 10);

/// t(C_k, g) = trace((diag(mu) V)^k), k >= 2.
double cycle_density(const StepDigraphon& g, int k);

/// Rooted cycle density per block: diagonal of V (diag(mu) V)^(k-1).
Eigen::VectorXd rooted_cycle_density(const StepDigraphon& g, int k);

struct KernelNorms {
  double l1 = 0, l2 = 0, linf = 0;
};

KernelNorms kernel_norms(const Kernel& k);

/// Directed path and cycle motifs on block indices 0..k-1 / 0..k.
Digraph path_digraph(int k);
Digraph cycle_digraph(int k);

}  // namespace digraphon

#endif  // DIGRAPHON_DENSITIES_HPP
