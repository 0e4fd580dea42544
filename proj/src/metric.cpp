#include "digraphon/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "digraphon/densities.hpp"
#include "digraphon/rng.hpp"

namespace digraphon {

namespace {

Eigen::MatrixXd weighted(const Kernel& k) {
  return (k.measures() * k.measures().transpose()).cwiseProduct(k.values());
}

std::vector<int> mask_to_set(std::uint32_t mask, int t) {
  std::vector<int> out;
  for (int i = 0; i < t; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

CutCertificate exact_cut_norm(const Kernel& k) {
  const int t = k.block_count();
  if (t > 24)
    throw Error(ErrorCode::TooLarge, "exact cut norm limited to 24 blocks");
  Eigen::MatrixXd w = weighted(k);

  // Gray-code walk over S; col(j) = sum_{i in S} w(i, j) maintained
  // incrementally. For each S the optimal T is the set of positive (resp.
  // negative) columns, covering both signs of the bilinear form.
  Eigen::VectorXd col = Eigen::VectorXd::Zero(t);
  std::uint32_t gray = 0;
  double best = -1;
  std::uint32_t best_s = 0;
  bool best_positive = true;
  const std::uint32_t total = 1u << t;
  for (std::uint32_t m = 1; m < total; ++m) {
    std::uint32_t next_gray = m ^ (m >> 1);
    int bit = std::countr_zero(gray ^ next_gray);
    double sign = (next_gray >> bit & 1u) ? 1.0 : -1.0;
    col += sign * w.row(bit).transpose();
    gray = next_gray;
    double pos = col.cwiseMax(0.0).sum();
    double neg = -col.cwiseMin(0.0).sum();
    if (pos > best) {
      best = pos;
      best_s = gray;
      best_positive = true;
    }
    if (neg > best) {
      best = neg;
      best_s = gray;
      best_positive = false;
    }
  }

  CutCertificate cert;
  cert.s = mask_to_set(best_s, t);
  // Rebuild T from the chosen S so the certificate is self-consistent.
  Eigen::VectorXd chosen = Eigen::VectorXd::Zero(t);
  for (int i : cert.s) chosen += w.row(i).transpose();
  for (int j = 0; j < t; ++j)
    if (best_positive ? chosen[j] > 0 : chosen[j] < 0) cert.t.push_back(j);
  cert.value = certificate_value(k, cert.s, cert.t);
  return cert;
}

// Alternating maximization from a given T: the optimal S for fixed T is a
// row-sign set and vice versa. Converges to a local corner optimum.
double polish(const Eigen::MatrixXd& w, std::uint64_t& s_mask,
              std::uint64_t& t_mask, bool positive) {
  const int t = static_cast<int>(w.rows());
  double current = 0;
  for (int round = 0; round < 64; ++round) {
    std::uint64_t new_s = 0;
    for (int i = 0; i < t; ++i) {
      double row = 0;
      for (int j = 0; j < t; ++j)
        if (t_mask >> j & 1u) row += w(i, j);
      if (positive ? row > 0 : row < 0) new_s |= 1ull << i;
    }
    std::uint64_t new_t = 0;
    for (int j = 0; j < t; ++j) {
      double colsum = 0;
      for (int i = 0; i < t; ++i)
        if (new_s >> i & 1u) colsum += w(i, j);
      if (positive ? colsum > 0 : colsum < 0) new_t |= 1ull << j;
    }
    double value = 0;
    for (int i = 0; i < t; ++i)
      if (new_s >> i & 1u)
        for (int j = 0; j < t; ++j)
          if (new_t >> j & 1u) value += w(i, j);
    value = std::abs(value);
    if (new_s == s_mask && new_t == t_mask) return value;
    s_mask = new_s;
    t_mask = new_t;
    current = value;
  }
  return current;
}

CutCertificate heuristic_cut_norm(const Kernel& k, std::uint64_t seed) {
  const int t = k.block_count();
  if (t > 63)
    throw Error(ErrorCode::TooLarge, "heuristic cut norm limited to 63 blocks");
  Eigen::MatrixXd w = weighted(k);
  Rng rng(seed);

  double best = -1;
  std::uint64_t best_s = 0, best_t = 0;
  for (int sign_case = 0; sign_case < 2; ++sign_case) {
    bool positive = sign_case == 0;
    // Annealing over independent (S, T) bit flips.
    std::uint64_t s_mask = rng.next_u64() & ((t == 64 ? ~0ull : (1ull << t) - 1));
    std::uint64_t t_mask = rng.next_u64() & ((t == 64 ? ~0ull : (1ull << t) - 1));
    auto energy = [&](std::uint64_t sm, std::uint64_t tm) {
      double v = 0;
      for (int i = 0; i < t; ++i)
        if (sm >> i & 1u)
          for (int j = 0; j < t; ++j)
            if (tm >> j & 1u) v += w(i, j);
      return positive ? v : -v;
    };
    double current = energy(s_mask, t_mask);
    double temperature = w.cwiseAbs().maxCoeff() * t + 1e-30;
    for (int step = 0; step < 10000; ++step) {
      int flip = static_cast<int>(rng.next_below(2 * t));
      std::uint64_t ns = s_mask, nt = t_mask;
      if (flip < t)
        ns ^= 1ull << flip;
      else
        nt ^= 1ull << (flip - t);
      double proposed = energy(ns, nt);
      if (proposed >= current ||
          rng.next_double() < std::exp((proposed - current) / temperature)) {
        s_mask = ns;
        t_mask = nt;
        current = proposed;
      }
      temperature *= 0.995;
    }
    double value = polish(w, s_mask, t_mask, positive);
    if (value > best) {
      best = value;
      best_s = s_mask;
      best_t = t_mask;
    }
  }

  CutCertificate cert;
  cert.s = mask_to_set(static_cast<std::uint32_t>(best_s & 0xffffffffu), std::min(t, 32));
  if (t > 32)
    for (int i = 32; i < t; ++i)
      if (best_s >> i & 1u) cert.s.push_back(i);
  for (int j = 0; j < t; ++j)
    if (best_t >> j & 1u) cert.t.push_back(j);
  cert.value = certificate_value(k, cert.s, cert.t);
  return cert;
}

// Finds n <= cap such that every block measure is an integer multiple of
// 1/n, then splits blocks into equal sub-blocks of measure exactly 1/n.
StepDigraphon to_equal_grid(const StepDigraphon& g, int n) {
  const int t = g.block_count();
  std::vector<int> pieces(t);
  int total = 0;
  for (int i = 0; i < t; ++i) {
    pieces[i] = static_cast<int>(std::lround(g.measures()[i] * n));
    total += pieces[i];
  }
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(total, 1.0 / n);
  Eigen::MatrixXd v(total, total);
  int row = 0;
  for (int i = 0; i < t; ++i)
    for (int a = 0; a < pieces[i]; ++a, ++row) {
      int colv = 0;
      for (int j = 0; j < t; ++j)
        for (int b = 0; b < pieces[j]; ++b, ++colv) v(row, colv) = g.values()(i, j);
    }
  return StepDigraphon(mu, v);
}

int equal_grid_size(const Eigen::VectorXd& mu, int cap) {
  for (int n = static_cast<int>(mu.size()); n <= cap; ++n) {
    bool ok = true;
    for (int i = 0; i < mu.size() && ok; ++i) {
      double scaled = mu[i] * n;
      ok = std::abs(scaled - std::lround(scaled)) <= 1e-7 &&
           std::lround(scaled) >= 1;
    }
    if (ok) return n;
  }
  return -1;
}

StepDigraphon permuted(const StepDigraphon& g, const std::vector<int>& perm) {
  const int t = g.block_count();
  Eigen::MatrixXd v(t, t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) v(i, j) = g.values()(perm[i], perm[j]);
  return StepDigraphon(g.measures(), v);
}

double exact_norm_of_permutation(const StepDigraphon& a,
                                 const StepDigraphon& b,
                                 const std::vector<int>& perm) {
  return exact_cut_norm(Kernel::difference(a, permuted(b, perm))).value;
}

}  // namespace

double certificate_value(const Kernel& k, const std::vector<int>& s,
                         const std::vector<int>& t) {
  double v = 0;
  for (int i : s)
    for (int j : t)
      v += k.measures()[i] * k.measures()[j] * k.values()(i, j);
  return std::abs(v);
}

CutCertificate cut_norm(const Kernel& k, CutMode mode, std::uint64_t seed) {
  return mode == CutMode::Exact ? exact_cut_norm(k)
                                : heuristic_cut_norm(k, seed);
}

std::pair<StepDigraphon, StepDigraphon> equal_measure_grid(
    const StepDigraphon& a, const StepDigraphon& b, int cap) {
  auto [ra, rb] = common_refinement(a, b, cap);
  int n = equal_grid_size(ra.measures(), cap);
  if (n < 0)
    throw Error(ErrorCode::EqualBlocksRequired,
                "no equal-measure grid of at most " + std::to_string(cap) +
                    " blocks fits both inputs");
  return {to_equal_grid(ra, n), to_equal_grid(rb, n)};
}

CutDistanceResult cut_distance(const StepDigraphon& a, const StepDigraphon& b,
                               CutMode mode, std::uint64_t seed) {
  auto [ga, gb] = equal_measure_grid(a, b);
  const int n = ga.block_count();

  CutDistanceResult result;
  if (mode == CutMode::Exact) {
    if (n > 10)
      throw Error(ErrorCode::TooLarge,
                  "exact cut distance limited to 10 equal blocks");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    result.permutation = perm;
    result.upper_bound = exact_norm_of_permutation(ga, gb, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
      double v = exact_norm_of_permutation(ga, gb, perm);
      if (v < result.upper_bound) {
        result.upper_bound = v;
        result.permutation = perm;
      }
    }
    return result;
  }

  if (n > 24)
    throw Error(ErrorCode::TooLarge,
                "heuristic cut distance needs <= 24 equal blocks for its "
                "exact final evaluation");
  // Anneal over permutations; moves are transpositions. The inner objective
  // is the cheap heuristic norm; the final report value is the exact norm of
  // the best permutation, so the result stays a true upper bound.
  Rng rng(seed);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto objective = [&](const std::vector<int>& p, std::uint64_t s) {
    Kernel k = Kernel::difference(ga, permuted(gb, p));
    return n <= 12 ? exact_cut_norm(k).value : heuristic_cut_norm(k, s).value;
  };
  std::vector<int> best_perm = perm;
  double current = objective(perm, seed ^ 0x9e3779b97f4a7c15ull);
  double best = current;
  double temperature = std::max(current, 1e-3);
  const int steps = n <= 12 ? 300 : 120;
  for (int step = 0; step < steps; ++step) {
    int i = static_cast<int>(rng.next_below(n));
    int j = static_cast<int>(rng.next_below(n));
    if (i == j) continue;
    std::swap(perm[i], perm[j]);
    double proposed = objective(perm, seed ^ (step * 0x9e3779b97f4a7c15ull));
    if (proposed <= current ||
        rng.next_double() < std::exp((current - proposed) / temperature)) {
      current = proposed;
      if (current < best) {
        best = current;
        best_perm = perm;
      }
    } else {
      std::swap(perm[i], perm[j]);
    }
    temperature *= 0.995;
  }
  result.permutation = best_perm;
  result.upper_bound = exact_norm_of_permutation(ga, gb, best_perm);
  return result;
}

CountingLemmaReport counting_lemma_check(const Digraph& d,
                                         const StepDigraphon& a,
                                         const StepDigraphon& b) {
  for (auto [u, v] : d.edges)
    if (d.has_edge(v, u))
      throw Error(ErrorCode::NotOriented,
                  "motif has counterparallel edges " + std::to_string(u) +
                      "<->" + std::to_string(v));
  auto [ga, gb] = equal_measure_grid(a, b);
  CutDistanceResult dist =
      cut_distance(a, b, ga.block_count() <= 7 ? CutMode::Exact : CutMode::Heuristic,
                   0x5eedull);
  CountingLemmaReport report;
  report.lhs = std::abs(hom_density(d, a).value - hom_density(d, b).value);
  report.rhs = d.edge_count() * dist.upper_bound;
  report.holds = report.lhs <= report.rhs + 1e-9;
  return report;
}

}  // namespace digraphon
