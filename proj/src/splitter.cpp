#include "dla/splitter.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dla/classifier.hpp"
#include "dla/pauli.hpp"
#include "dla/prng.hpp"

namespace dla {

namespace {

// Splits `set` by parity of |N(u) cap test_set|; returns {even, odd}.
std::pair<std::vector<int>, std::vector<int>> parity_split(
    const std::vector<std::vector<int>>& adj, const std::vector<int>& set,
    const std::vector<char>& in_test) {
  std::pair<std::vector<int>, std::vector<int>> out;
  for (int u : set) {
    int c = 0;
    for (int w : adj[u]) c += in_test[w];
    (c % 2 == 0 ? out.first : out.second).push_back(u);
  }
  return out;
}

void internal_split_rec(const std::vector<std::vector<int>>& adj, std::vector<int> set,
                        std::vector<char>& scratch, std::vector<std::vector<int>>& out) {
  for (int u : set) scratch[u] = 1;
  auto [evens, odds] = parity_split(adj, set, scratch);
  for (int u : set) scratch[u] = 0;
  if (evens.empty() || odds.empty()) {
    out.push_back(std::move(set));
    return;
  }
  internal_split_rec(adj, std::move(evens), scratch, out);
  internal_split_rec(adj, std::move(odds), scratch, out);
}

}  // namespace

VertexPartition split_vertices_internal(const Graph& g) {
  VertexPartition p;
  p.n = g.n;
  if (g.n == 0) return p;
  auto adj = g.adjacency();
  std::vector<int> all(g.n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<char> scratch(g.n, 0);
  internal_split_rec(adj, std::move(all), scratch, p.blocks);
  p.normalize();
  return p;
}

VertexPartition split_vertices_external(const Graph& g, VertexPartition p) {
  if (p.n != g.n) throw ParameterError("partition does not match graph");
  p.normalize();
  p.validate();
  auto adj = g.adjacency();
  std::vector<char> in_test(g.n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> order(p.blocks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto &ba = p.blocks[a], &bb = p.blocks[b];
      if (ba.size() != bb.size()) return ba.size() < bb.size();
      return ba.front() < bb.front();
    });
    for (std::size_t si : order) {
      for (std::size_t ti : order) {
        if (si == ti) continue;
        for (int u : p.blocks[ti]) in_test[u] = 1;
        auto [evens, odds] = parity_split(adj, p.blocks[si], in_test);
        for (int u : p.blocks[ti]) in_test[u] = 0;
        if (!evens.empty() && !odds.empty()) {
          p.blocks[si] = std::move(evens);
          p.blocks.push_back(std::move(odds));
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  p.normalize();
  return p;
}

EdgePartition split_edges(const Graph& g, const VertexPartition& p) {
  if (p.n != g.n) throw ParameterError("partition does not match graph");
  std::vector<int> idx = p.block_index();
  EdgePartition q;
  std::vector<Edge> within;
  std::map<std::pair<int, int>, std::vector<Edge>> across;
  for (const Edge& e : g.edges) {
    int a = idx[e.u], b = idx[e.v];
    if (a == b)
      within.push_back(e);
    else
      across[{std::min(a, b), std::max(a, b)}].push_back(e);
  }
  if (!within.empty()) q.blocks.push_back(std::move(within));
  for (auto& [key, block] : across) q.blocks.push_back(std::move(block));
  q.normalize();
  return q;
}

BfsSplitResult bfs_splitting_trace(const Graph& g) {
  BfsSplitResult res;
  res.partition = VertexPartition::single_block(g.n);
  if (g.n == 0) return res;
  auto adj = g.adjacency();
  std::vector<int> bidx(g.n, 0);
  std::size_t block_count = 1;
  std::vector<int> counts;
  std::vector<int> touched;
  for (int round = 0; round + 1 < g.n; ++round) {
    counts.assign(block_count, 0);
    // Signature of v: its current block plus the sorted list of blocks seen an
    // odd number of times among its neighbors.
    std::map<std::pair<int, std::vector<int>>, int> next_id;
    std::vector<int> next(g.n);
    for (int v = 0; v < g.n; ++v) {
      touched.clear();
      for (int w : adj[v]) {
        if (counts[bidx[w]]++ == 0) touched.push_back(bidx[w]);
      }
      std::vector<int> odd;
      for (int b : touched) {
        if (counts[b] % 2 == 1) odd.push_back(b);
        counts[b] = 0;
      }
      std::sort(odd.begin(), odd.end());
      auto [it, fresh] = next_id.try_emplace({bidx[v], std::move(odd)},
                                             static_cast<int>(next_id.size()));
      next[v] = it->second;
    }
    if (next_id.size() == block_count) break;
    block_count = next_id.size();
    bidx = std::move(next);
    ++res.rounds;
  }
  std::vector<std::vector<int>> blocks(block_count);
  for (int v = 0; v < g.n; ++v) blocks[bidx[v]].push_back(v);
  res.partition = VertexPartition::of_blocks(g.n, std::move(blocks));
  return res;
}

VertexPartition bfs_splitting(const Graph& g) { return bfs_splitting_trace(g).partition; }

SplitVerdict is_splittable(const Graph& g) {
  SplitVerdict v;
  v.partition = bfs_splitting(g);
  v.splittable = v.partition.fully_split();
  return v;
}

VertexPartition random_schedule_terminal(const Graph& g, std::uint64_t seed) {
  SplitMix64 rng(seed);
  VertexPartition p = VertexPartition::single_block(g.n);
  auto adj = g.adjacency();
  std::vector<char> in_test(g.n, 0);
  for (;;) {
    struct Candidate {
      std::size_t s, t;
      std::vector<int> evens, odds;
    };
    std::vector<Candidate> cands;
    for (std::size_t si = 0; si < p.blocks.size(); ++si)
      for (std::size_t ti = 0; ti < p.blocks.size(); ++ti) {
        for (int u : p.blocks[ti]) in_test[u] = 1;
        auto [evens, odds] = parity_split(adj, p.blocks[si], in_test);
        for (int u : p.blocks[ti]) in_test[u] = 0;
        if (!evens.empty() && !odds.empty())
          cands.push_back({si, ti, std::move(evens), std::move(odds)});
      }
    if (cands.empty()) break;
    Candidate& pick = cands[rng.next_below(cands.size())];
    p.blocks[pick.s] = std::move(pick.evens);
    p.blocks.push_back(std::move(pick.odds));
    p.normalize();
  }
  return p;
}

namespace {

bool brute_force_free(const Graph& g) {
  auto [cls, madim] = classify_multiangle(g);
  VertexPartition vp = bfs_splitting(g);
  EdgePartition ep = split_edges(g, vp);
  auto gens = split_generators<Rational>(g, vp, ep);
  ClosureOptions copts;
  copts.qubit_cap = g.n;
  auto res = lie_closure(gens, copts);
  return BigInt(res.basis.dim()) == madim.exact;
}

// Every pair of vertices in `side` must see a different subset of `other`.
bool distinct_cross_neighborhoods(const Graph& g, const std::vector<int>& side,
                                  const std::vector<int>& other) {
  std::vector<char> in_other(g.n, 0);
  for (int u : other) in_other[u] = 1;
  auto adj = g.adjacency();
  std::vector<std::vector<int>> views;
  views.reserve(side.size());
  for (int u : side) {
    std::vector<int> view;
    for (int w : adj[u])
      if (in_other[w]) view.push_back(w);
    views.push_back(std::move(view));
  }
  std::sort(views.begin(), views.end());
  return std::adjacent_find(views.begin(), views.end()) == views.end();
}

}  // namespace

bool check_free_recursive(const Graph& g, int cap) {
  if (cap < 1) throw ParameterError("recursion cap must be positive");
  if (g.weighted()) throw PreconditionError("freeness recursion requires an unweighted graph");
  if (g.n <= cap) return brute_force_free(g);

  std::vector<int> deg = g.degrees();
  std::vector<int> v_even, v_odd;
  for (int v = 0; v < g.n; ++v) (deg[v] % 2 == 0 ? v_even : v_odd).push_back(v);
  if (v_odd.size() < 4 || v_even.size() < 4) return false;

  if (check_free_recursive(g.induced(v_odd), cap))
    return distinct_cross_neighborhoods(g, v_even, v_odd);
  if (check_free_recursive(g.induced(v_even), cap))
    return distinct_cross_neighborhoods(g, v_odd, v_even);
  return false;
}

}  // namespace dla
