#include "digraphon/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "digraphon/metric.hpp"
#include "digraphon/rng.hpp"
#include "digraphon/structure.hpp"

namespace digraphon {

namespace {

struct Deviation {
  double value = 0;
  std::vector<int> s;  // atoms of the row cell
  std::vector<int> t;  // atoms of the column cell
};

// Mean of Gamma over Z_i x Z_j (atoms all carry mass 1/N).
double cell_density(const Eigen::MatrixXd& v, const std::vector<int>& zi,
                    const std::vector<int>& zj) {
  double sum = 0;
  for (int u : zi)
    for (int w : zj) sum += v(u, w);
  return sum / (double(zi.size()) * double(zj.size()));
}

// Exact rectangular cut maximum of the centered kernel on Z_i x Z_j:
// max over S in Z_i, T in Z_j of |sum mu^2 (V - p)|. Enumerates the smaller
// side (<= 20) and picks the other side by sign.
Deviation exact_deviation(const Eigen::MatrixXd& v, double n_atoms, double p,
                          const std::vector<int>& zi,
                          const std::vector<int>& zj) {
  bool rows_small = zi.size() <= zj.size();
  const std::vector<int>& small = rows_small ? zi : zj;
  const std::vector<int>& large = rows_small ? zj : zi;
  const int ns = static_cast<int>(small.size());
  const double w_atom = 1.0 / (n_atoms * n_atoms);

  Deviation best;
  std::vector<double> acc(large.size(), 0.0);
  std::uint32_t gray = 0;
  std::uint32_t best_mask = 0;
  bool best_positive = true;
  for (std::uint32_t m = 1; m < (1u << ns); ++m) {
    std::uint32_t next_gray = m ^ (m >> 1);
    int bit = 0;
    while (!((gray ^ next_gray) >> bit & 1u)) ++bit;
    double sign = (next_gray >> bit & 1u) ? 1.0 : -1.0;
    for (std::size_t c = 0; c < large.size(); ++c) {
      double entry = rows_small ? v(small[bit], large[c]) - p
                                : v(large[c], small[bit]) - p;
      acc[c] += sign * entry;
    }
    gray = next_gray;
    double pos = 0, neg = 0;
    for (double a : acc) {
      if (a > 0) pos += a;
      if (a < 0) neg -= a;
    }
    if (pos * w_atom > best.value) {
      best.value = pos * w_atom;
      best_mask = gray;
      best_positive = true;
    }
    if (neg * w_atom > best.value) {
      best.value = neg * w_atom;
      best_mask = gray;
      best_positive = false;
    }
  }

  std::vector<int> chosen_small;
  for (int b = 0; b < ns; ++b)
    if (best_mask >> b & 1u) chosen_small.push_back(small[b]);
  std::vector<int> chosen_large;
  for (int c : large) {
    double colsum = 0;
    for (int r : chosen_small) colsum += rows_small ? v(r, c) - p : v(c, r) - p;
    if (best_positive ? colsum > 0 : colsum < 0) chosen_large.push_back(c);
  }
  best.s = rows_small ? chosen_small : chosen_large;
  best.t = rows_small ? chosen_large : chosen_small;
  return best;
}

double deviation_value(const Eigen::MatrixXd& v, double n_atoms, double p,
                       const std::vector<int>& s, const std::vector<int>& t) {
  double sum = 0;
  for (int u : s)
    for (int w : t) sum += v(u, w) - p;
  return std::abs(sum) / (n_atoms * n_atoms);
}

// Alternating maximization lower-bound probe for large cells.
Deviation probe_deviation(const Eigen::MatrixXd& v, double n_atoms, double p,
                          const std::vector<int>& zi,
                          const std::vector<int>& zj, Rng& rng, int restarts) {
  Deviation best;
  for (int sign_case = 0; sign_case < 2; ++sign_case) {
    double sign = sign_case == 0 ? 1.0 : -1.0;
    for (int r = 0; r < restarts; ++r) {
      std::vector<bool> in_t(zj.size(), false);
      for (std::size_t c = 0; c < zj.size(); ++c)
        in_t[c] = r == 0 ? true : rng.next_bool(0.5);
      std::vector<int> s, t;
      for (int round = 0; round < 64; ++round) {
        s.clear();
        for (int u : zi) {
          double row = 0;
          for (std::size_t c = 0; c < zj.size(); ++c)
            if (in_t[c]) row += v(u, zj[c]) - p;
          if (sign * row > 0) s.push_back(u);
        }
        std::vector<bool> next_t(zj.size(), false);
        for (std::size_t c = 0; c < zj.size(); ++c) {
          double colsum = 0;
          for (int u : s) colsum += v(u, zj[c]) - p;
          next_t[c] = sign * colsum > 0;
        }
        if (next_t == in_t) break;
        in_t = next_t;
      }
      t.clear();
      for (std::size_t c = 0; c < zj.size(); ++c)
        if (in_t[c]) t.push_back(zj[c]);
      double value = deviation_value(v, n_atoms, p, s, t);
      if (value > best.value) {
        best.value = value;
        best.s = s;
        best.t = t;
      }
    }
  }
  return best;
}

Deviation find_deviation(const Eigen::MatrixXd& v, double n_atoms, double p,
                         const std::vector<int>& zi,
                         const std::vector<int>& zj, Rng& rng) {
  if (std::min(zi.size(), zj.size()) <= 20)
    return exact_deviation(v, n_atoms, p, zi, zj);
  return probe_deviation(v, n_atoms, p, zi, zj, rng, 8);
}

double partition_energy(const Eigen::MatrixXd& v, double n_atoms,
                        const std::vector<std::vector<int>>& cells) {
  double energy = 0;
  for (const auto& zi : cells)
    for (const auto& zj : cells) {
      double p = cell_density(v, zi, zj);
      energy += (zi.size() * zj.size() / (n_atoms * n_atoms)) * p * p;
    }
  return energy;
}

// Splits `cell` by membership in `part`; returns nonempty pieces.
std::vector<std::vector<int>> split_by(const std::vector<int>& cell,
                                       const std::vector<int>& part) {
  std::vector<int> inside, outside;
  for (int a : cell) {
    if (std::binary_search(part.begin(), part.end(), a))
      inside.push_back(a);
    else
      outside.push_back(a);
  }
  std::vector<std::vector<int>> out;
  if (!inside.empty()) out.push_back(inside);
  if (!outside.empty()) out.push_back(outside);
  return out;
}

// Equal-size rebalance: t' = smallest divisor of N with t' >= piece count;
// big pieces are chopped into whole cells first, leftovers pooled round-robin.
std::vector<std::vector<int>> rebalance(std::vector<std::vector<int>> pieces,
                                        int n_atoms) {
  int target = static_cast<int>(pieces.size());
  while (n_atoms % target != 0) ++target;
  const int size = n_atoms / target;
  std::vector<std::vector<int>> cells;
  std::vector<int> pool;
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (auto& piece : pieces) {
    std::size_t off = 0;
    while (piece.size() - off >= static_cast<std::size_t>(size)) {
      cells.emplace_back(piece.begin() + off, piece.begin() + off + size);
      off += size;
    }
    pool.insert(pool.end(), piece.begin() + off, piece.end());
  }
  for (std::size_t off = 0; off < pool.size(); off += size)
    cells.emplace_back(pool.begin() + off, pool.begin() + off + size);
  for (auto& cell : cells) std::sort(cell.begin(), cell.end());
  return cells;
}

}  // namespace

RegularPartitionResult weak_regular_partition(const StepDigraphon& g,
                                              double eps, int max_cells,
                                              std::uint64_t seed) {
  if (!(eps > 0 && eps < 1))
    throw Error(ErrorCode::ValueRange, "epsilon must lie in (0, 1)");
  if (max_cells < 1)
    throw Error(ErrorCode::ValueRange, "max_cells must be positive");

  RegularPartitionResult result(equal_measure_grid(g, g).first);
  const int n = result.atoms.block_count();
  const Eigen::MatrixXd& v = result.atoms.values();
  Rng rng(seed);

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  result.cells = {all};
  result.energies.push_back(partition_energy(v, n, result.cells));

  const int iteration_cap = static_cast<int>(4.0 / (eps * eps)) + 8;
  while (true) {
    const int t = static_cast<int>(result.cells.size());
    const double threshold = eps / (double(t) * double(t));

    Deviation best;
    int best_i = -1, best_j = -1;
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) {
        double p = cell_density(v, result.cells[i], result.cells[j]);
        Deviation dev =
            find_deviation(v, n, p, result.cells[i], result.cells[j], rng);
        if (dev.value > best.value) {
          best = dev;
          best_i = i;
          best_j = j;
        }
      }
    if (best_i < 0 || best.value < threshold) break;

    std::sort(best.s.begin(), best.s.end());
    std::sort(best.t.begin(), best.t.end());
    std::vector<std::vector<int>> pieces;
    for (int c = 0; c < t; ++c) {
      std::vector<std::vector<int>> split = {result.cells[c]};
      if (c == best_i) {
        std::vector<std::vector<int>> next;
        for (const auto& piece : split)
          for (auto& sub : split_by(piece, best.s)) next.push_back(std::move(sub));
        split = std::move(next);
      }
      if (c == best_j) {
        std::vector<std::vector<int>> next;
        for (const auto& piece : split)
          for (auto& sub : split_by(piece, best.t)) next.push_back(std::move(sub));
        split = std::move(next);
      }
      for (auto& piece : split) pieces.push_back(std::move(piece));
    }

    // Defect form of the Cauchy-Schwarz step: splitting by the certificate
    // raises the index by at least the squared deviation.
    double split_energy = partition_energy(v, n, pieces);
    if (split_energy + 1e-12 <
        result.energies.back() + best.value * best.value)
      throw Error(ErrorCode::ShapeMismatch,
                  "internal: energy increment below the certificate bound");

    std::vector<std::vector<int>> next_cells = rebalance(std::move(pieces), n);
    ++result.iterations;
    if (static_cast<int>(next_cells.size()) > max_cells ||
        result.iterations > iteration_cap) {
      result.compliant = false;
      break;
    }
    result.cells = std::move(next_cells);
    result.energies.push_back(partition_energy(v, n, result.cells));
  }
  for (auto& cell : result.cells) std::sort(cell.begin(), cell.end());
  std::sort(result.cells.begin(), result.cells.end());
  return result;
}

ClusterDigraphResult cluster_digraph(const StepDigraphon& atoms,
                                     const std::vector<std::vector<int>>& cells,
                                     double d, double eps, std::uint64_t seed) {
  const int t = static_cast<int>(cells.size());
  const int n = atoms.block_count();
  for (const auto& cell : cells)
    if (cell.empty() || cell.size() * t != static_cast<std::size_t>(n))
      throw Error(ErrorCode::UnequalCells,
                  "cells must partition the atoms into equal sizes");

  ClusterDigraphResult result;
  result.partition = cells;
  result.d = d;
  result.eps = eps;
  result.densities.resize(t, t);
  result.digraph.n = t;
  const Eigen::MatrixXd& v = atoms.values();
  Rng rng(seed);
  const double cut_bound = eps / (double(t) * double(t));

  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      double p = cell_density(v, cells[i], cells[j]);
      result.densities(i, j) = p;
      if (p < d) continue;
      Deviation dev = find_deviation(v, n, p, cells[i], cells[j], rng);
      if (dev.value < cut_bound) result.digraph.add_edge(i, j);
    }

  result.min_outdegree = t;
  for (int i = 0; i < t; ++i) {
    int out = 0;
    for (int j = 0; j < t; ++j)
      if (result.digraph.has_edge(i, j)) ++out;
    result.min_outdegree = std::min(result.min_outdegree, out);
  }
  Degrees deg = degrees(atoms);
  result.outdegree_ok =
      result.min_outdegree >= (deg.min_out - d - eps) * t - 1e-12;
  return result;
}

bool verify_cluster_digraph(const StepDigraphon& atoms,
                            const ClusterDigraphResult& result,
                            std::uint64_t seed) {
  const int t = static_cast<int>(result.partition.size());
  const int n = atoms.block_count();
  std::vector<bool> covered(n, false);
  for (const auto& cell : result.partition) {
    if (cell.size() * t != static_cast<std::size_t>(n)) return false;
    for (int a : cell) {
      if (a < 0 || a >= n || covered[a]) return false;
      covered[a] = true;
    }
  }
  if (!std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }))
    return false;

  const Eigen::MatrixXd& v = atoms.values();
  Rng rng(seed);
  const double cut_bound = result.eps / (double(t) * double(t));
  for (auto [i, j] : result.digraph.edges) {
    const auto& zi = result.partition[i];
    const auto& zj = result.partition[j];
    double p = cell_density(v, zi, zj);
    if (std::abs(p - result.densities(i, j)) > 1e-12) return false;
    if (p < result.d - 1e-12) return false;
    Deviation dev = std::min(zi.size(), zj.size()) <= 24
                        ? exact_deviation(v, n, p, zi, zj)
                        : probe_deviation(v, n, p, zi, zj, rng, 32);
    if (dev.value >= cut_bound + 1e-12) return false;
  }

  int min_out = t;
  for (int i = 0; i < t; ++i) {
    int out = 0;
    for (int j = 0; j < t; ++j)
      if (result.digraph.has_edge(i, j)) ++out;
    min_out = std::min(min_out, out);
  }
  if (min_out != result.min_outdegree) return false;
  Degrees deg = degrees(atoms);
  bool outdeg_ok = min_out >= (deg.min_out - result.d - result.eps) * t - 1e-12;
  return outdeg_ok == result.outdegree_ok && result.outdegree_ok;
}

int shortest_positive_cycle(const StepDigraphon& g) {
  const int t = g.block_count();
  SupportDigraph s = support_digraph(g);
  int best = t + 1;
  for (int start = 0; start < t; ++start) {
    if (s.edge(start, start)) return 1;
    // BFS distance from start; a cycle through start closes on an edge back.
    std::vector<int> dist(t, -1);
    std::vector<int> queue = {start};
    dist[start] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int w = 0; w < t; ++w)
        if (s.edge(u, w)) {
          if (w == start) best = std::min(best, dist[u] + 1);
          if (dist[w] == -1) {
            dist[w] = dist[u] + 1;
            queue.push_back(w);
          }
        }
    }
  }
  if (best > t)
    throw Error(ErrorCode::Acyclic, "support digraph has no directed cycle");
  return best;
}

}  // namespace digraphon
