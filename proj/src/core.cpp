#include "digraphon/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "digraphon/rng.hpp"

namespace digraphon {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MeasureSum: return "MeasureSum";
    case ErrorCode::NonPositiveMeasure: return "NonPositiveMeasure";
    case ErrorCode::ValueRange: return "ValueRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyDigraph: return "EmptyDigraph";
    case ErrorCode::EmptyRestriction: return "EmptyRestriction";
    case ErrorCode::RefinementOverflow: return "RefinementOverflow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EqualBlocksRequired: return "EqualBlocksRequired";
    case ErrorCode::NotOriented: return "NotOriented";
    case ErrorCode::NotAComponent: return "NotAComponent";
    case ErrorCode::NotFragmented: return "NotFragmented";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::ZeroSpectralRadius: return "ZeroSpectralRadius";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::CellBudgetExceeded: return "CellBudgetExceeded";
    case ErrorCode::UnequalCells: return "UnequalCells";
    case ErrorCode::Acyclic: return "Acyclic";
  }
  return "Unknown";
}

bool Digraph::has_edge(int u, int v) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

void Digraph::add_edge(int u, int v) {
  auto e = std::make_pair(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) edges.insert(it, e);
}

namespace {

void validate_measures(const Eigen::VectorXd& mu) {
  if (mu.size() == 0)
    throw Error(ErrorCode::ShapeMismatch, "empty measure vector");
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!(mu[i] > 0.0))
      throw Error(ErrorCode::NonPositiveMeasure,
                  "block " + std::to_string(i) + " has mass " +
                      std::to_string(mu[i]));
  }
  double s = mu.sum();
  if (std::abs(s - 1.0) > defaults::kMeasureTol)
    throw Error(ErrorCode::MeasureSum,
                "block masses sum to " + std::to_string(s));
}

void validate_shape(const Eigen::VectorXd& mu, const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols() || v.rows() != mu.size())
    throw Error(ErrorCode::ShapeMismatch,
                "values must be t x t with t = " + std::to_string(mu.size()));
}

}  // namespace

StepDigraphon::StepDigraphon(Eigen::VectorXd measures, Eigen::MatrixXd values)
    : measures_(std::move(measures)), values_(std::move(values)) {
  validate_measures(measures_);
  validate_shape(measures_, values_);
  for (Eigen::Index i = 0; i < values_.rows(); ++i)
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      double x = values_(i, j);
      if (!(x >= 0.0 && x <= 1.0))
        throw Error(ErrorCode::ValueRange,
                    "value [" + std::to_string(i) + "][" + std::to_string(j) +
                        "] = " + std::to_string(x) + " outside [0,1]");
    }
}

Kernel::Kernel(Eigen::VectorXd measures, Eigen::MatrixXd values)
    : measures_(std::move(measures)), values_(std::move(values)) {
  validate_measures(measures_);
  validate_shape(measures_, values_);
}

Kernel Kernel::difference(const StepDigraphon& a, const StepDigraphon& b) {
  if (a.block_count() != b.block_count() ||
      (a.measures() - b.measures()).cwiseAbs().maxCoeff() >
          defaults::kMeasureTol)
    throw Error(ErrorCode::ShapeMismatch,
                "difference requires a common measure vector");
  return Kernel(a.measures(), a.values() - b.values());
}

StepDigraphon from_digraph(const Digraph& g) {
  if (g.n < 1) throw Error(ErrorCode::EmptyDigraph, "digraph has no vertices");
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n)
      throw Error(ErrorCode::ShapeMismatch, "edge endpoint out of range");
    if (u == v)
      throw Error(ErrorCode::ShapeMismatch,
                  "self-loop " + std::to_string(u) + " not representable");
  }
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(g.n, 1.0 / g.n);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(g.n, g.n);
  for (auto [a, b] : g.edges) v(a, b) = 1.0;
  return StepDigraphon(mu, v);
}

StepDigraphon transpose(const StepDigraphon& g) {
  return StepDigraphon(g.measures(), g.values().transpose());
}

StepDigraphon restricted(const StepDigraphon& g, const std::vector<int>& blocks,
                         RestrictMode mode) {
  const int t = g.block_count();
  std::vector<char> in_set(t, 0);
  for (int b : blocks) {
    if (b < 0 || b >= t)
      throw Error(ErrorCode::ShapeMismatch, "block index out of range");
    in_set[b] = 1;
  }
  if (mode == RestrictMode::ZeroOut) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(t, t);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j)
        if (in_set[i] && in_set[j]) v(i, j) = g.values()(i, j);
    return StepDigraphon(g.measures(), v);
  }
  if (blocks.empty())
    throw Error(ErrorCode::EmptyRestriction, "renormalize needs a nonempty set");
  std::vector<int> sorted(blocks);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const int s = static_cast<int>(sorted.size());
  double mass = 0;
  for (int b : sorted) mass += g.measures()[b];
  Eigen::VectorXd mu(s);
  Eigen::MatrixXd v(s, s);
  for (int i = 0; i < s; ++i) {
    mu[i] = g.measures()[sorted[i]] / mass;
    for (int j = 0; j < s; ++j) v(i, j) = g.values()(sorted[i], sorted[j]);
  }
  mu /= mu.sum();  // absorb rounding so validation stays exact
  return StepDigraphon(mu, v);
}

Degrees degrees(const StepDigraphon& g) {
  Degrees d;
  d.out = g.values() * g.measures();
  d.in = g.values().transpose() * g.measures();
  d.min_out = d.out.minCoeff();
  d.max_out = d.out.maxCoeff();
  d.min_in = d.in.minCoeff();
  d.max_in = d.in.maxCoeff();
  return d;
}

std::vector<int> ground(const StepDigraphon& g, double tau) {
  Degrees d = degrees(g);
  std::vector<int> out;
  for (int i = 0; i < g.block_count(); ++i)
    if (d.out[i] > tau || d.in[i] > tau) out.push_back(i);
  return out;
}

StepDigraphon refine(const StepDigraphon& g, int k, int cap) {
  if (k < 1) throw Error(ErrorCode::ShapeMismatch, "refinement factor must be >= 1");
  const int t = g.block_count();
  if (static_cast<long long>(t) * k > cap)
    throw Error(ErrorCode::RefinementOverflow,
                std::to_string(static_cast<long long>(t) * k) +
                    " blocks exceeds cap " + std::to_string(cap));
  if (k == 1) return g;
  const int n = t * k;
  Eigen::VectorXd mu(n);
  Eigen::MatrixXd v(n, n);
  for (int i = 0; i < n; ++i) {
    mu[i] = g.measures()[i / k] / k;
    for (int j = 0; j < n; ++j) v(i, j) = g.values()(i / k, j / k);
  }
  return StepDigraphon(mu, v);
}

std::pair<StepDigraphon, StepDigraphon> common_refinement(
    const StepDigraphon& a, const StepDigraphon& b, int cap) {
  // merged cumulative breakpoints of both block structures
  std::vector<double> cuts;
  double acc = 0;
  for (int i = 0; i + 1 < a.block_count(); ++i) {
    acc += a.measures()[i];
    cuts.push_back(acc);
  }
  acc = 0;
  for (int i = 0; i + 1 < b.block_count(); ++i) {
    acc += b.measures()[i];
    cuts.push_back(acc);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts)
    if (merged.empty() || c - merged.back() > defaults::kMeasureTol)
      merged.push_back(c);
  const int n = static_cast<int>(merged.size()) + 1;
  if (n > cap)
    throw Error(ErrorCode::RefinementOverflow,
                "common refinement needs " + std::to_string(n) + " blocks");

  Eigen::VectorXd mu(n);
  double prev = 0;
  for (int i = 0; i < n; ++i) {
    double next = (i + 1 < n) ? merged[i] : 1.0;
    mu[i] = next - prev;
    prev = next;
  }

  // map each new block (by its midpoint) to the source block it sits in
  auto block_map = [&](const StepDigraphon& g) {
    std::vector<int> map(n);
    double lo = 0;
    for (int i = 0; i < n; ++i) {
      double mid = lo + mu[i] / 2;
      double cum = 0;
      int idx = g.block_count() - 1;
      for (int j = 0; j < g.block_count(); ++j) {
        cum += g.measures()[j];
        if (mid < cum) {
          idx = j;
          break;
        }
      }
      map[i] = idx;
      lo += mu[i];
    }
    return map;
  };
  std::vector<int> ma = block_map(a), mb = block_map(b);
  Eigen::MatrixXd va(n, n), vb(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      va(i, j) = a.values()(ma[i], ma[j]);
      vb(i, j) = b.values()(mb[i], mb[j]);
    }
  mu /= mu.sum();
  return {StepDigraphon(mu, va), StepDigraphon(mu, vb)};
}

Digraph sample_digraph(const StepDigraphon& g, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::ShapeMismatch, "sample size must be >= 1");
  Rng rng(seed);
  const int t = g.block_count();
  std::vector<int> block(n);
  for (int u = 0; u < n; ++u) {
    double x = rng.next_double();
    double cum = 0;
    int idx = t - 1;
    for (int j = 0; j < t; ++j) {
      cum += g.measures()[j];
      if (x < cum) {
        idx = j;
        break;
      }
    }
    block[u] = idx;
  }
  Digraph out;
  out.n = n;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (rng.next_bool(g.values()(block[u], block[v])))
        out.edges.emplace_back(u, v);
    }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace digraphon
