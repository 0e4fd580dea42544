#include "digraphon/densities.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace digraphon {

namespace {

Eigen::MatrixXd power_values(const Eigen::VectorXd& mu,
                             const Eigen::MatrixXd& v, int k) {
  Eigen::MatrixXd step = mu.asDiagonal() * v;
  Eigen::MatrixXd out = v;
  for (int i = 1; i < k; ++i) out = out * step;
  return out;
}

}  // namespace

StepDigraphon power(const StepDigraphon& g, int k) {
  if (k < 1) throw Error(ErrorCode::ShapeMismatch, "power exponent must be >= 1");
  Eigen::MatrixXd out = power_values(g.measures(), g.values(), k);
  // integral form keeps entries in [0,1]; clip rounding spill only
  out = out.cwiseMax(0.0).cwiseMin(1.0);
  return StepDigraphon(g.measures(), out);
}

Kernel power(const Kernel& k, int exponent) {
  if (exponent < 1)
    throw Error(ErrorCode::ShapeMismatch, "power exponent must be >= 1");
  return Kernel(k.measures(), power_values(k.measures(), k.values(), exponent));
}

StepFunction apply(const StepDigraphon& g, const StepFunction& f, Side side) {
  if (f.size() != g.block_count())
    throw Error(ErrorCode::ShapeMismatch,
                "step function length " + std::to_string(f.size()) +
                    " does not match block count");
  Eigen::VectorXcd weighted = g.measures().cast<std::complex<double>>()
                                  .cwiseProduct(f);
  if (side == Side::Left)
    return g.values().transpose().cast<std::complex<double>>() * weighted;
  return g.values().cast<std::complex<double>>() * weighted;
}

DensityReport hom_density(const Digraph& d, const StepDigraphon& g,
                          int max_vertices) {
  if (d.n > max_vertices)
    throw Error(ErrorCode::TooManyVertices,
                std::to_string(d.n) + " motif vertices exceeds cap " +
                    std::to_string(max_vertices));
  const int t = g.block_count();
  const int n = d.n;
  DensityReport report;
  if (n == 0) {
    report.value = 1.0;
    report.assignment_count = 1;
    return report;
  }
  std::vector<int> phi(n, 0);
  double total = 0;
  long long count = 0;
  while (true) {
    double w = 1.0;
    for (int v = 0; v < n; ++v) w *= g.measures()[phi[v]];
    for (auto [u, v] : d.edges) w *= g.values()(phi[u], phi[v]);
    total += w;
    ++count;
    int pos = n - 1;
    while (pos >= 0 && phi[pos] == t - 1) phi[pos--] = 0;
    if (pos < 0) break;
    ++phi[pos];
  }
  report.value = total;
  report.assignment_count = count;
  return report;
}

double cycle_density(const StepDigraphon& g, int k) {
  if (k < 2) throw Error(ErrorCode::ShapeMismatch, "cycle length must be >= 2");
  Eigen::MatrixXd step = g.measures().asDiagonal() * g.values();
  Eigen::MatrixXd acc = step;
  for (int i = 1; i < k; ++i) acc = acc * step;
  return acc.trace();
}

Eigen::VectorXd rooted_cycle_density(const StepDigraphon& g, int k) {
  if (k < 2) throw Error(ErrorCode::ShapeMismatch, "cycle length must be >= 2");
  Eigen::MatrixXd pk = power_values(g.measures(), g.values(), k);
  return pk.diagonal();
}

KernelNorms kernel_norms(const Kernel& k) {
  KernelNorms n;
  const Eigen::VectorXd& mu = k.measures();
  const Eigen::MatrixXd& v = k.values();
  Eigen::MatrixXd weight = mu * mu.transpose();
  n.l1 = (weight.array() * v.array().abs()).sum();
  n.l2 = std::sqrt((weight.array() * v.array().square()).sum());
  n.linf = v.cwiseAbs().maxCoeff();
  return n;
}

Digraph path_digraph(int k) {
  Digraph d;
  d.n = k + 1;
  for (int i = 0; i < k; ++i) d.edges.emplace_back(i, i + 1);
  return d;
}

Digraph cycle_digraph(int k) {
  Digraph d;
  d.n = k;
  for (int i = 0; i < k; ++i) d.edges.emplace_back(i, (i + 1) % k);
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

}  // namespace digraphon
