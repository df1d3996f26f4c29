#include "dla/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

#include "dla/prng.hpp"

namespace dla {

namespace {

void validate_edges(int n, const std::vector<Edge>& edges) {
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw ParameterError("edge endpoint out of range");
    if (e.u == e.v) throw ParameterError("self-loop not allowed");
  }
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i - 1] == edges[i]) throw ParameterError("duplicate edge");
}

}  // namespace

Graph Graph::make(int n, std::vector<Edge> edges) {
  if (n < 0) throw ParameterError("negative vertex count");
  for (Edge& e : edges) e = make_edge(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  validate_edges(n, edges);
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

Graph Graph::make_weighted(int n, std::vector<Edge> edges, std::vector<double> weights) {
  if (weights.size() != edges.size())
    throw ParameterError("weight count does not match edge count");
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (Edge& e : edges) e = make_edge(e.u, e.v);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  std::vector<Edge> se(edges.size());
  std::vector<double> sw(weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    se[i] = edges[order[i]];
    sw[i] = weights[order[i]];
  }
  validate_edges(n, se);
  Graph g;
  g.n = n;
  g.edges = std::move(se);
  g.weights = std::move(sw);
  return g;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n, 0);
  for (const Edge& e : edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

bool Graph::has_edge(int u, int v) const { return edge_index(u, v).has_value(); }

std::optional<std::size_t> Graph::edge_index(int u, int v) const {
  Edge e = make_edge(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it != edges.end() && *it == e) return static_cast<std::size_t>(it - edges.begin());
  return std::nullopt;
}

std::vector<std::vector<int>> Graph::components() const {
  auto adj = adjacency();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<int> q;
    q.push(s);
    comp[s] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      out[id].push_back(v);
      for (int w : adj[v])
        if (comp[w] == -1) {
          comp[w] = id;
          q.push(w);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool Graph::connected() const { return components().size() <= 1; }

Graph Graph::induced(const std::vector<int>& vs) const {
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] < 0 || vs[i] >= n) throw ParameterError("induced vertex out of range");
    if (pos[vs[i]] != -1) throw ParameterError("duplicate vertex in induced set");
    pos[vs[i]] = static_cast<int>(i);
  }
  std::vector<Edge> es;
  std::vector<double> ws;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int a = pos[edges[i].u], b = pos[edges[i].v];
    if (a != -1 && b != -1) {
      es.push_back(make_edge(a, b));
      if (weighted()) ws.push_back(weights[i]);
    }
  }
  if (weighted()) return make_weighted(static_cast<int>(vs.size()), std::move(es), std::move(ws));
  return make(static_cast<int>(vs.size()), std::move(es));
}

Graph Graph::unweighted_copy() const {
  Graph g;
  g.n = n;
  g.edges = edges;
  return g;
}

// ---- Families --------------------------------------------------------------

Graph path_graph(int n) {
  if (n < 1) throw ParameterError("path needs at least 1 vertex");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Graph::make(n, std::move(es));
}

Graph cycle_graph(int n) {
  if (n < 3) throw ParameterError("cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  es.push_back({0, n - 1});
  return Graph::make(n, std::move(es));
}

Graph complete_graph(int n) {
  if (n < 1) throw ParameterError("complete graph needs at least 1 vertex");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return Graph::make(n, std::move(es));
}

Graph star_graph(int k) {
  if (k < 0) throw ParameterError("star needs a nonnegative leaf count");
  std::vector<Edge> es;
  for (int i = 1; i <= k; ++i) es.push_back({0, i});
  return Graph::make(k + 1, std::move(es));
}

Graph spider_graph(const std::vector<int>& arm_lengths) {
  for (int len : arm_lengths)
    if (len < 1) throw ParameterError("spider arm length must be positive");
  std::vector<Edge> es;
  int next = 1;
  for (int len : arm_lengths) {
    int prev = 0;
    for (int step = 0; step < len; ++step) {
      es.push_back(make_edge(prev, next));
      prev = next++;
    }
  }
  return Graph::make(next, std::move(es));
}

Graph extended_ladder_graph(int n, int k) {
  if (n < 1 || k < 0) throw ParameterError("ladder needs n >= 1 and k >= 0");
  auto top = [&](int i) { return i + k; };  // i in -k..n-1
  auto bot = [&](int i) { return n + k + i; };
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back(make_edge(top(i), bot(i)));
  for (int i = -k; i + 1 < n; ++i) es.push_back(make_edge(top(i), top(i + 1)));
  for (int i = 0; i + 1 < n; ++i) es.push_back(make_edge(bot(i), bot(i + 1)));
  return Graph::make(2 * n + k, std::move(es));
}

Graph grid_plus1_graph(int w, int h) {
  if (w < 1 || h < 1) throw ParameterError("grid needs w >= 1 and h >= 1");
  auto at = [&](int i, int j) { return 1 + j * (w + 1) + i; };
  std::vector<Edge> es;
  es.push_back({0, at(0, 0)});
  for (int j = 0; j <= h; ++j)
    for (int i = 0; i <= w; ++i) {
      if (i < w) es.push_back(make_edge(at(i, j), at(i + 1, j)));
      if (j < h) es.push_back(make_edge(at(i, j), at(i, j + 1)));
    }
  return Graph::make((w + 1) * (h + 1) + 1, std::move(es));
}

Graph parse_family_spec(const std::string& spec) {
  auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw ParameterError("family spec must look like Name(a,b,...)");
  std::string name = spec.substr(0, open);
  std::string body = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<int> args;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParameterError("bad integer in family spec: " + tok);
    }
    if (used != tok.size()) throw ParameterError("bad integer in family spec: " + tok);
    args.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  auto want = [&](std::size_t k) {
    if (args.size() != k)
      throw ParameterError(name + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (name == "Path") {
    want(1);
    return path_graph(args[0]);
  }
  if (name == "Cycle") {
    want(1);
    return cycle_graph(args[0]);
  }
  if (name == "Complete") {
    want(1);
    return complete_graph(args[0]);
  }
  if (name == "Star") {
    want(1);
    return star_graph(args[0]);
  }
  if (name == "Spider") {
    if (args.empty()) throw ParameterError("Spider needs at least one arm length");
    return spider_graph(args);
  }
  if (name == "Ladder") {
    want(2);
    return extended_ladder_graph(args[0], args[1]);
  }
  if (name == "GridPlus1") {
    want(2);
    return grid_plus1_graph(args[0], args[1]);
  }
  throw ParameterError("unknown family: " + name);
}

// ---- Sampling and enumeration ----------------------------------------------

Graph sample_er(int n, double p, std::uint64_t seed) {
  if (n < 0) throw ParameterError("negative vertex count");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must lie in [0,1]");
  SplitMix64 rng(seed);
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_double() < p) es.push_back({i, j});
  return Graph::make(n, std::move(es));
}

namespace {

// Pair (i, j), i < j, packed at bit j*(j-1)/2 + i.
inline int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }

bool mask_connected(int n, std::uint32_t mask) {
  if (n <= 1) return true;
  std::uint32_t adj[7] = {0};
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (mask >> pair_bit(i, j) & 1u) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
  std::uint32_t seen = 1u, frontier = 1u;
  while (frontier != 0) {
    std::uint32_t next = 0;
    while (frontier != 0) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= adj[v] & ~seen;
    }
    seen |= next;
    frontier = next;
  }
  return seen == (1u << n) - 1u;
}

std::uint32_t relabel_mask(int n, std::uint32_t mask, const int* perm) {
  std::uint32_t out = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (mask >> pair_bit(i, j) & 1u) {
        int a = perm[i], b = perm[j];
        out |= 1u << (a < b ? pair_bit(a, b) : pair_bit(b, a));
      }
  return out;
}

Graph mask_to_graph(int n, std::uint32_t mask) {
  std::vector<Edge> es;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (mask >> pair_bit(i, j) & 1u) es.push_back({i, j});
  return Graph::make(n, std::move(es));
}

}  // namespace

std::vector<Graph> enumerate_connected(int n) {
  if (n < 1 || n > 7) throw UnsupportedSizeError("connected enumeration supports 1 <= n <= 7");
  int bits = n * (n - 1) / 2;
  int perm[7];
  std::iota(perm, perm + n, 0);
  std::vector<Graph> out;
  std::unordered_set<std::uint32_t> seen;
  seen.reserve(1u << std::min(bits, 22));
  /*
   * Ascending mask order means the first labeled copy of each isomorphism
   * class encountered is its minimum labeled mask; that copy is emitted and
   * the whole orbit under vertex permutations is marked as seen.
   */
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    if (!mask_connected(n, mask)) continue;
    if (seen.count(mask)) continue;
    out.push_back(mask_to_graph(n, mask));
    std::sort(perm, perm + n);
    do {
      seen.insert(relabel_mask(n, mask, perm));
    } while (std::next_permutation(perm, perm + n));
  }
  return out;
}

std::vector<std::vector<int>> automorphism_group(const Graph& g) {
  if (g.n > 10) throw UnsupportedSizeError("automorphism search supports n <= 10");
  std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
  for (const Edge& e : g.edges) adj[e.u][e.v] = adj[e.v][e.u] = true;
  std::vector<int> deg = g.degrees();
  std::vector<std::vector<int>> out;
  std::vector<int> perm(g.n, -1);
  std::vector<bool> used(g.n, false);
  // Iterative-in-spirit backtracking: assign images in vertex order, pruning on
  // degree and on adjacency with all previously assigned vertices.
  std::vector<int> stack_cand(g.n, 0);
  int depth = 0;
  if (g.n == 0) return {{}};
  while (depth >= 0) {
    if (depth == g.n) {
      out.push_back(perm);
      --depth;
      if (depth >= 0) {
        used[perm[depth]] = false;
        ++stack_cand[depth];
      }
      continue;
    }
    bool advanced = false;
    for (int cand = stack_cand[depth]; cand < g.n; ++cand) {
      if (used[cand] || deg[cand] != deg[depth]) continue;
      bool ok = true;
      for (int j = 0; j < depth && ok; ++j)
        if (adj[depth][j] != adj[cand][perm[j]]) ok = false;
      if (!ok) continue;
      perm[depth] = cand;
      used[cand] = true;
      stack_cand[depth] = cand;
      ++depth;
      if (depth < g.n) stack_cand[depth] = 0;
      advanced = true;
      break;
    }
    if (!advanced) {
      --depth;
      if (depth >= 0) {
        used[perm[depth]] = false;
        ++stack_cand[depth];
      }
    }
  }
  return out;
}

CutAssignment brute_maxcut(const Graph& g) {
  if (g.n > 28) throw UnsupportedSizeError("exhaustive MaxCut supports n <= 28");
  CutAssignment best;
  best.side.assign(g.n, false);
  best.value = 0.0;
  if (g.n <= 1 || g.edges.empty()) return best;

  auto adj = g.adjacency();
  std::vector<std::vector<double>> wadj(g.n);
  for (int v = 0; v < g.n; ++v) {
    wadj[v].reserve(adj[v].size());
    for (int w : adj[v]) wadj[v].push_back(g.weight(*g.edge_index(v, w)));
  }
  std::vector<std::uint8_t> side(g.n, 0);
  double current = 0.0;
  std::int64_t current_int = 0;
  bool exact_int = !g.weighted();

  auto recompute = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      if (side[g.edges[i].u] != side[g.edges[i].v]) s += g.weight(i);
    return s;
  };

  /*
   * Gray-code walk over assignments of vertices 0..n-2; vertex n-1 stays on
   * side 0 since complementing a cut leaves its value unchanged.
   */
  std::uint64_t states = 1ull << (g.n - 1);
  for (std::uint64_t code = 1; code < states; ++code) {
    int v = std::countr_zero(code);
    double delta = 0.0;
    std::int64_t delta_int = 0;
    for (std::size_t k = 0; k < adj[v].size(); ++k) {
      bool was_cut = side[adj[v][k]] != side[v];
      if (exact_int)
        delta_int += was_cut ? -1 : 1;
      else
        delta += was_cut ? -wadj[v][k] : wadj[v][k];
    }
    side[v] ^= 1;
    if (exact_int) {
      current_int += delta_int;
      if (current_int > static_cast<std::int64_t>(best.value)) {
        best.value = static_cast<double>(current_int);
        for (int i = 0; i < g.n; ++i) best.side[i] = side[i] != 0;
      }
    } else {
      current += delta;
      if (current > best.value) {
        best.value = recompute();
        current = best.value;
        for (int i = 0; i < g.n; ++i) best.side[i] = side[i] != 0;
      }
    }
  }
  return best;
}

// ---- Subdivision reduction ---------------------------------------------

namespace {

// Subdivide each base edge with size_of[e] fresh vertices, appending labels in
// the given edge order.
void build_subdivision(SubdivisionMap& out, int base_n, const std::vector<Edge>& base_edges,
                       const std::map<Edge, int>& size_of) {
  std::vector<Edge> es;
  int next = base_n;
  for (const Edge& e : base_edges) {
    int s = size_of.at(e);
    std::vector<int> inner;
    int prev = e.u;
    for (int t = 0; t < s; ++t) {
      es.push_back(make_edge(prev, next));
      inner.push_back(next);
      prev = next++;
    }
    es.push_back(make_edge(prev, e.v));
    out.path_of[e] = std::move(inner);
  }
  out.subdivided = Graph::make(next, std::move(es));
  out.base_edges = base_edges;
}

}  // namespace

SubdivisionMap reduce_to_subdivision(const Graph& g) {
  if (g.weighted()) throw PreconditionError("reduction requires an unweighted graph");
  if (g.n < 2) throw PreconditionError("reduction requires at least 2 vertices");
  if (!g.connected()) throw PreconditionError("reduction requires a connected graph");

  SubdivisionMap out;
  out.original = g;
  std::vector<int> deg = g.degrees();
  std::vector<int> even_vertices;
  for (int v = 0; v < g.n; ++v)
    if (deg[v] % 2 == 0) even_vertices.push_back(v);

  if (even_vertices.empty() && g.n >= 3) {
    // All degrees odd: subdivide edge i (canonical order) with 2(i+1) vertices.
    std::map<Edge, int> size_of;
    for (int i = 0; i < g.m(); ++i) size_of[g.edges[i]] = 2 * (i + 1);
    out.base_vertices.resize(g.n);
    std::iota(out.base_vertices.begin(), out.base_vertices.end(), 0);
    build_subdivision(out, g.n, g.edges, size_of);
    return out;
  }

  if (!even_vertices.empty()) {
    /*
     * Attach a pendant to every even-degree vertex, making all degrees odd,
     * then subdivide: pendant edges (by host vertex order) receive
     * 2, 4, ..., 2a inserted vertices and the original edges (canonical
     * order) continue with 2a+2, 2a+4, ...
     */
    int a = static_cast<int>(even_vertices.size());
    int base_n = g.n + a;
    std::vector<Edge> base_edges;
    std::map<Edge, int> size_of;
    int size = 0;
    for (int k = 0; k < a; ++k) {
      Edge pe = make_edge(even_vertices[k], g.n + k);
      base_edges.push_back(pe);
      size_of[pe] = (size += 2);
      out.added_pendants.emplace_back(even_vertices[k], g.n + k);
    }
    for (const Edge& e : g.edges) {
      base_edges.push_back(e);
      size_of[e] = (size += 2);
    }
    out.base_vertices.resize(base_n);
    std::iota(out.base_vertices.begin(), out.base_vertices.end(), 0);
    build_subdivision(out, base_n, base_edges, size_of);
    return out;
  }

  /*
   * Remaining case is the single edge: both endpoints have odd degree but a
   * 2-vertex base is too small. Graft two pendant arms onto vertex 0 and
   * subdivide them with 1 and 3 vertices, yielding a 3-arm spider with arm
   * lengths 1, 2, 4 whose base is the 3-leaf star {0,1,3,7}.
   */
  out.base_vertices = {0, 1, 3, 7};
  out.added_pendants = {{0, 3}, {0, 7}};
  out.base_edges = {{0, 1}, {0, 3}, {0, 7}};
  out.path_of[{0, 1}] = {};
  out.path_of[{0, 3}] = {2};
  out.path_of[{0, 7}] = {4, 5, 6};
  out.subdivided = Graph::make(
      8, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 7}});
  return out;
}

// ---- Freeness-preserving extensions ------------------------------------

namespace {

bool is_forest(const Graph& g) {
  auto comps = g.components();
  std::size_t edge_budget = 0;
  for (const auto& c : comps) edge_budget += c.size() - 1;
  return g.edges.size() <= edge_budget;
}

}  // namespace

Graph extend_free(const Graph& g, const Extension& ext) {
  const Graph& h = ext.attached;
  if (g.weighted() || h.weighted())
    throw PreconditionError("extensions require unweighted graphs");

  std::set<std::pair<int, int>> seen_joins;
  std::vector<int> sent(g.n, 0), received(h.n, 0);
  for (auto [a, b] : ext.joins) {
    if (a < 0 || a >= g.n) throw ValidationError("join host endpoint out of range");
    if (b < 0 || b >= h.n) throw ValidationError("join attached endpoint out of range");
    if (!seen_joins.insert({a, b}).second)
      throw ValidationError("duplicate join between host vertex " + std::to_string(a) +
                            " and attached vertex " + std::to_string(b));
    ++sent[a];
    ++received[b];
  }

  std::vector<int> gdeg = g.degrees(), hdeg = h.degrees();
  auto host_name = [](int v) { return "host vertex " + std::to_string(v); };
  auto att_name = [](int w) { return "attached vertex " + std::to_string(w); };

  switch (ext.kind) {
    case ExtensionKind::PartitionEven:
    case ExtensionKind::PartitionOdd: {
      bool odd_side = ext.kind == ExtensionKind::PartitionOdd;
      for (int v = 0; v < g.n; ++v) {
        bool sends = (gdeg[v] % 2 == 1) == odd_side;
        if (sends && sent[v] != 1)
          throw ValidationError(host_name(v) + " must send exactly one join, has " +
                                std::to_string(sent[v]));
        if (!sends && sent[v] != 0)
          throw ValidationError(host_name(v) + " must send no joins, has " +
                                std::to_string(sent[v]));
      }
      for (int w = 0; w < h.n; ++w) {
        if (received[w] < 1) throw ValidationError(att_name(w) + " receives no join");
        bool match = received[w] % 2 == hdeg[w] % 2;
        if (odd_side ? match : !match)
          throw ValidationError(att_name(w) + " receives " + std::to_string(received[w]) +
                                " joins, wrong parity against its degree " +
                                std::to_string(hdeg[w]));
      }
      break;
    }
    case ExtensionKind::Forest: {
      if (!is_forest(h)) throw ValidationError("attached graph must be a forest");
      for (int w = 0; w < h.n; ++w) {
        bool odd = hdeg[w] % 2 == 1;
        if (odd && received[w] != 1)
          throw ValidationError(att_name(w) + " has odd degree and must send exactly one join, has " +
                                std::to_string(received[w]));
        if (!odd && received[w] != 0)
          throw ValidationError(att_name(w) + " has even degree and must send no joins, has " +
                                std::to_string(received[w]));
      }
      for (int v = 0; v < g.n; ++v) {
        if (gdeg[v] % 2 == 1) {
          if (sent[v] != 0)
            throw ValidationError(host_name(v) + " has odd degree and must receive no joins");
        } else if (sent[v] % 2 == 0) {
          throw ValidationError(host_name(v) + " has even degree and must receive an odd number of joins, has " +
                                std::to_string(sent[v]));
        }
      }
      break;
    }
  }

  std::vector<Edge> es = g.edges;
  for (const Edge& e : h.edges) es.push_back({g.n + e.u, g.n + e.v});
  for (auto [a, b] : ext.joins) es.push_back(make_edge(a, g.n + b));
  return Graph::make(g.n + h.n, std::move(es));
}

std::vector<std::uint8_t> degree_parity_vector(const Graph& g) {
  std::vector<std::uint8_t> out(g.n, 0);
  std::vector<int> deg = g.degrees();
  for (int v = 0; v < g.n; ++v) out[v] = static_cast<std::uint8_t>(deg[v] % 2);
  return out;
}

}  // namespace dla
