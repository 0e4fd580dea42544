#include "digraphon/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "digraphon/densities.hpp"

namespace digraphon {

namespace {

using BoolMat = std::vector<std::vector<bool>>;

// Length->=1 transitive closure via repeated squaring-free Floyd-Warshall on
// the "reaches in >= 1 step" relation.
BoolMat closure(const BoolMat& adj) {
  const int t = static_cast<int>(adj.size());
  BoolMat r = adj;
  for (int k = 0; k < t; ++k)
    for (int i = 0; i < t; ++i)
      if (r[i][k])
        for (int j = 0; j < t; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

// Iterative Tarjan; returns SCC id per block, ids in reverse topological
// order of discovery (standard property).
std::vector<int> tarjan_scc(const BoolMat& adj, int& scc_count) {
  const int t = static_cast<int>(adj.size());
  std::vector<int> index(t, -1), low(t, 0), comp(t, -1), stack, frame_v,
      frame_i;
  std::vector<bool> on_stack(t, false);
  int next_index = 0;
  scc_count = 0;
  for (int root = 0; root < t; ++root) {
    if (index[root] != -1) continue;
    frame_v = {root};
    frame_i = {0};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frame_v.empty()) {
      int v = frame_v.back();
      bool descended = false;
      int j = frame_i.back();
      for (; j < t; ++j) {
        if (!adj[v][j]) continue;
        if (index[j] == -1) {
          index[j] = low[j] = next_index++;
          stack.push_back(j);
          on_stack[j] = true;
          frame_i.back() = j + 1;  // resume past j after returning from it
          frame_v.push_back(j);
          frame_i.push_back(0);
          descended = true;
          break;
        }
        if (on_stack[j]) low[v] = std::min(low[v], index[j]);
      }
      if (!descended) frame_i.back() = j;
      if (descended) continue;
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = scc_count;
        } while (w != v);
        ++scc_count;
      }
      frame_v.pop_back();
      frame_i.pop_back();
      if (!frame_v.empty())
        low[frame_v.back()] = std::min(low[frame_v.back()], low[v]);
    }
  }
  return comp;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool set_equal(const std::vector<int>& a, const std::vector<int>& b) {
  return sorted_unique(a) == sorted_unique(b);
}

int find_component(const Decomposition& dec, const std::vector<int>& blocks) {
  for (std::size_t i = 0; i < dec.components.size(); ++i)
    if (set_equal(dec.components[i], blocks)) return static_cast<int>(i);
  return -1;
}

}  // namespace

SupportDigraph support_digraph(const StepDigraphon& g, double tau) {
  SupportDigraph s;
  s.t = g.block_count();
  s.adjacency.assign(s.t, std::vector<bool>(s.t, false));
  for (int i = 0; i < s.t; ++i)
    for (int j = 0; j < s.t; ++j) s.adjacency[i][j] = g.values()(i, j) > tau;
  return s;
}

Decomposition decompose(const StepDigraphon& g) {
  const int t = g.block_count();
  SupportDigraph s = support_digraph(g);
  int scc_count = 0;
  std::vector<int> comp = tarjan_scc(s.adjacency, scc_count);

  std::vector<std::vector<int>> scc_blocks(scc_count);
  for (int i = 0; i < t; ++i) scc_blocks[comp[i]].push_back(i);

  // Tarjan ids come out in reverse topological order; flip them so that
  // component lists and condensation edges follow topological order.
  std::vector<int> topo(scc_count);
  for (int c = 0; c < scc_count; ++c) topo[c] = scc_count - 1 - c;

  Decomposition dec;
  std::vector<int> comp_index(scc_count, -1);  // scc id -> component index
  std::vector<std::vector<int>> ordered(scc_count);
  for (int c = 0; c < scc_count; ++c) ordered[topo[c]] = scc_blocks[c];
  for (const auto& blocks : ordered) {
    bool has_edge = blocks.size() > 1 ||
                    (blocks.size() == 1 && s.edge(blocks[0], blocks[0]));
    if (has_edge) {
      for (int b : blocks) comp_index[comp[b]] = static_cast<int>(dec.components.size());
      dec.components.push_back(blocks);
    } else {
      dec.fragmented.push_back(blocks[0]);
    }
  }
  std::sort(dec.fragmented.begin(), dec.fragmented.end());

  const int m = static_cast<int>(dec.components.size());
  std::vector<int> block_comp(t, -1);
  for (int c = 0; c < m; ++c)
    for (int b : dec.components[c]) block_comp[b] = c;

  std::set<std::pair<int, int>> cond;
  for (int u = 0; u < t; ++u)
    for (int v = 0; v < t; ++v)
      if (s.edge(u, v) && block_comp[u] != -1 && block_comp[v] != -1 &&
          block_comp[u] != block_comp[v])
        cond.insert({block_comp[u], block_comp[v]});
  dec.condensation.assign(cond.begin(), cond.end());

  // Extended condensation: support paths whose internal blocks all lie in the
  // fragmented set. The fragmented support is acyclic, so BFS over fragmented
  // blocks suffices.
  std::set<std::pair<int, int>> ext = cond;
  for (int c = 0; c < m; ++c) {
    std::vector<bool> frag_seen(t, false);
    std::vector<int> queue;
    for (int u : dec.components[c])
      for (int v = 0; v < t; ++v)
        if (s.edge(u, v)) {
          if (block_comp[v] != -1 && block_comp[v] != c) ext.insert({c, block_comp[v]});
          if (block_comp[v] == -1 && !frag_seen[v]) {
            frag_seen[v] = true;
            queue.push_back(v);
          }
        }
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (int v = 0; v < t; ++v)
        if (s.edge(queue[qi], v)) {
          if (block_comp[v] != -1 && block_comp[v] != c) ext.insert({c, block_comp[v]});
          if (block_comp[v] == -1 && !frag_seen[v]) {
            frag_seen[v] = true;
            queue.push_back(v);
          }
        }
  }
  dec.extended_condensation.assign(ext.begin(), ext.end());

  // Condensation acyclicity holds by construction (edges follow SCC topo
  // order), checked defensively here.
  for (auto [a, b] : dec.condensation)
    if (a >= b)
      throw Error(ErrorCode::ShapeMismatch,
                  "internal: condensation edge against topological order");
  return dec;
}

bool verify_decomposition(const StepDigraphon& g) {
  const int t = g.block_count();
  if (t > 12)
    throw Error(ErrorCode::TooLarge,
                "verify_decomposition oracle limited to 12 blocks");
  SupportDigraph s = support_digraph(g);
  BoolMat r = closure(s.adjacency);

  // Symmetrized relation: i ~ j iff each reaches the other in >= 1 step.
  BoolMat w(t, std::vector<bool>(t, false));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) w[i][j] = r[i][j] && r[j][i];

  std::vector<int> label(t, -1);
  std::vector<std::vector<int>> oracle_components;
  for (int i = 0; i < t; ++i) {
    bool has_neighbor = false;
    for (int j = 0; j < t; ++j) has_neighbor = has_neighbor || w[i][j];
    if (!has_neighbor || label[i] != -1) continue;
    std::vector<int> blocks = {i};
    label[i] = static_cast<int>(oracle_components.size());
    for (std::size_t qi = 0; qi < blocks.size(); ++qi)
      for (int j = 0; j < t; ++j)
        if (w[blocks[qi]][j] && label[j] == -1) {
          label[j] = label[i];
          blocks.push_back(j);
        }
    oracle_components.push_back(sorted_unique(blocks));
  }

  Decomposition dec = decompose(g);
  if (dec.components.size() != oracle_components.size()) return false;
  for (const auto& blocks : oracle_components)
    if (find_component(dec, blocks) == -1) return false;

  // Strong connectivity of each component: every bipartition A | B carries a
  // support edge from A to B.
  for (const auto& blocks : dec.components) {
    const int n = static_cast<int>(blocks.size());
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      bool crossing = false;
      for (int a = 0; a < n && !crossing; ++a)
        for (int b = 0; b < n && !crossing; ++b)
          if ((mask >> a & 1u) && !(mask >> b & 1u) &&
              s.edge(blocks[a], blocks[b]))
            crossing = true;
      if (!crossing) return false;
    }
    if (n == 1 && !s.edge(blocks[0], blocks[0])) return false;
  }
  return true;
}

std::vector<int> reach(const StepDigraphon& g, const std::vector<int>& from,
                       Direction direction) {
  const int t = g.block_count();
  SupportDigraph s = support_digraph(g);
  std::vector<bool> seen(t, false);
  std::vector<int> queue;
  auto push_successors = [&](int u) {
    for (int v = 0; v < t; ++v) {
      bool edge = direction == Direction::Out ? s.edge(u, v) : s.edge(v, u);
      if (edge && !seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  };
  for (int u : from) {
    if (u < 0 || u >= t)
      throw Error(ErrorCode::ShapeMismatch, "block index out of range");
    push_successors(u);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) push_successors(queue[qi]);
  std::vector<int> out;
  for (int v = 0; v < t; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

ReachabilityProfile reachability_profile(const StepDigraphon& g, int i, int j,
                                         int horizon) {
  const int t = g.block_count();
  if (i < 0 || i >= t || j < 0 || j >= t)
    throw Error(ErrorCode::ShapeMismatch, "block index out of range");
  if (horizon < 2 * t * t)
    throw Error(ErrorCode::ShapeMismatch,
                "horizon must be at least 2 t^2 = " + std::to_string(2 * t * t));
  SupportDigraph s = support_digraph(g);

  ReachabilityProfile profile;
  profile.from = i;
  profile.to = j;

  std::vector<bool> frontier(t, false);
  frontier[i] = true;
  for (int len = 1; len <= horizon; ++len) {
    std::vector<bool> next(t, false);
    for (int u = 0; u < t; ++u)
      if (frontier[u])
        for (int v = 0; v < t; ++v)
          if (s.edge(u, v)) next[v] = true;
    frontier = next;
    if (frontier[j]) profile.lengths_observed.push_back(len);
  }
  if (profile.lengths_observed.empty())
    throw Error(ErrorCode::Unreachable,
                "no positive-density walk from block " + std::to_string(i) +
                    " to block " + std::to_string(j) + " within horizon");

  Decomposition dec = decompose(g);
  for (const auto& blocks : dec.components) {
    bool has_i = std::find(blocks.begin(), blocks.end(), i) != blocks.end();
    bool has_j = std::find(blocks.begin(), blocks.end(), j) != blocks.end();
    if (has_i && has_j) {
      PeriodicStructure ps = period_and_classes(g, blocks);
      int ci = 0, cj = 0;
      for (int c = 0; c < ps.period; ++c) {
        const auto& cls = ps.classes[c];
        if (std::find(cls.begin(), cls.end(), i) != cls.end()) ci = c;
        if (std::find(cls.begin(), cls.end(), j) != cls.end()) cj = c;
      }
      profile.same_component = true;
      profile.eventual_period = ps.period;
      profile.shift = ((cj - ci) % ps.period + ps.period) % ps.period;
      // Onset: earliest k after which the observed set agrees with the
      // arithmetic progression k == shift (mod D) up to the horizon.
      std::vector<bool> observed(horizon + 1, false);
      for (int len : profile.lengths_observed) observed[len] = true;
      int onset = horizon + 1;
      for (int k = horizon; k >= 1; --k) {
        if (observed[k] != (k % ps.period == profile.shift % ps.period)) break;
        onset = k;
      }
      profile.onset = onset;
      break;
    }
  }
  return profile;
}

PeriodicStructure period_and_classes(const StepDigraphon& g,
                                     const std::vector<int>& component) {
  Decomposition dec = decompose(g);
  if (find_component(dec, component) == -1)
    throw Error(ErrorCode::NotAComponent,
                "block set is not a strong component of the digraphon");
  std::vector<int> blocks = sorted_unique(component);
  const int n = static_cast<int>(blocks.size());
  SupportDigraph s = support_digraph(g);
  std::vector<int> pos(g.block_count(), -1);
  for (int a = 0; a < n; ++a) pos[blocks[a]] = a;

  // BFS levels from the lowest-index block over intra-component edges.
  std::vector<int> level(n, -1);
  std::vector<int> queue = {0};
  level[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int a = queue[qi];
    for (int b = 0; b < n; ++b)
      if (s.edge(blocks[a], blocks[b]) && level[b] == -1) {
        level[b] = level[a] + 1;
        queue.push_back(b);
      }
  }

  int d = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (s.edge(blocks[a], blocks[b]))
        d = std::gcd(d, std::abs(level[a] + 1 - level[b]));
  if (d == 0) d = 1;

  PeriodicStructure ps;
  ps.period = d;
  ps.classes.assign(d, {});
  for (int a = 0; a < n; ++a) ps.classes[level[a] % d].push_back(blocks[a]);
  // level(lowest block) = 0, so the canonical shift is already 0.
  ps.canonical_shift = 0;
  for (auto& cls : ps.classes) std::sort(cls.begin(), cls.end());
  return ps;
}

bool check_class_uniqueness(const StepDigraphon& g,
                            const std::vector<int>& component) {
  if (g.block_count() > 12)
    throw Error(ErrorCode::TooLarge,
                "class uniqueness check limited to 12 blocks");
  PeriodicStructure canonical = period_and_classes(g, component);
  const int d = canonical.period;
  if (d == 1) return true;
  std::vector<int> blocks = sorted_unique(component);
  const int n = static_cast<int>(blocks.size());
  SupportDigraph s = support_digraph(g);

  std::vector<int> canon_class(n, 0);
  for (int c = 0; c < d; ++c)
    for (int b : canonical.classes[c])
      canon_class[static_cast<int>(std::lower_bound(blocks.begin(),
                                                    blocks.end(), b) -
                                   blocks.begin())] = c;

  // Backtracking enumeration of every class assignment consistent with
  // "support edges advance the class by one mod D".
  std::vector<int> assign(n, -1);
  bool all_shifts = true;
  auto consistent = [&](int a) {
    for (int b = 0; b < n; ++b) {
      if (assign[b] == -1) continue;
      if (s.edge(blocks[a], blocks[b]) && (assign[a] + 1) % d != assign[b])
        return false;
      if (s.edge(blocks[b], blocks[a]) && (assign[b] + 1) % d != assign[a])
        return false;
    }
    return true;
  };
  auto is_shift_of_canonical = [&]() {
    for (int shift = 0; shift < d; ++shift) {
      bool match = true;
      for (int a = 0; a < n && match; ++a)
        match = assign[a] == (canon_class[a] + shift) % d;
      if (match) return true;
    }
    return false;
  };
  std::function<void(int)> dfs = [&](int a) {
    if (!all_shifts) return;
    if (a == n) {
      // Valid assignments must also use the correct period structure: every
      // class value 0..d-1 appears (classes partition the component).
      std::vector<bool> used(d, false);
      for (int v : assign) used[v] = true;
      bool full = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
      if (full && !is_shift_of_canonical()) all_shifts = false;
      return;
    }
    for (int c = 0; c < d; ++c) {
      assign[a] = c;
      if (consistent(a)) dfs(a + 1);
      assign[a] = -1;
    }
  };
  dfs(0);
  return all_shifts;
}

std::vector<int> fragmented_order(const StepDigraphon& g,
                                  const std::vector<int>& x) {
  Decomposition dec = decompose(g);
  std::vector<int> blocks = sorted_unique(x);
  for (int b : blocks)
    if (!std::binary_search(dec.fragmented.begin(), dec.fragmented.end(), b))
      throw Error(ErrorCode::NotFragmented,
                  "block " + std::to_string(b) + " lies in a strong component");
  const int n = static_cast<int>(blocks.size());
  SupportDigraph s = support_digraph(g);

  // In-reachability mass: g(b) = measure of blocks of X that reach b by a
  // support walk of length >= 1 inside X. A support edge strictly increases
  // g, so ascending g is a topological order.
  BoolMat sub(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) sub[a][b] = s.edge(blocks[a], blocks[b]);
  BoolMat r = closure(sub);
  std::vector<double> weight(n, 0);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      if (r[a][b]) weight[b] += g.measures()[blocks[a]];

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (weight[a] != weight[b]) return weight[a] < weight[b];
    return blocks[a] < blocks[b];
  });

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (weight[a] >= weight[b] &&
          g.values()(blocks[a], blocks[b]) > defaults::kSupportTol)
        throw Error(ErrorCode::ShapeMismatch,
                    "internal: fragmented order violated by a support value");

  // Nilpotency of the induced support: boolean power |X| must vanish.
  BoolMat p = sub;
  for (int k = 1; k < n; ++k) {
    BoolMat next(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        if (p[a][c])
          for (int b = 0; b < n; ++b)
            if (sub[c][b]) next[a][b] = true;
    p = next;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p[a][b])
        throw Error(ErrorCode::ShapeMismatch,
                    "internal: fragmented support is not nilpotent");

  std::vector<int> out(n);
  for (int a = 0; a < n; ++a) out[a] = blocks[order[a]];
  return out;
}

bool cycles_confined_check(const StepDigraphon& g, int kmax) {
  if (kmax > 8)
    throw Error(ErrorCode::TooLarge, "cycles_confined_check limited to k <= 8");
  Decomposition dec = decompose(g);
  for (int k = 2; k <= kmax; ++k) {
    double whole = cycle_density(g, k);
    double parts = 0;
    for (const auto& blocks : dec.components)
      parts += cycle_density(restricted(g, blocks, RestrictMode::ZeroOut), k);
    if (std::abs(whole - parts) > 1e-10) return false;
  }
  return true;
}

}  // namespace digraphon
