#include "dla/certificate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace dla {

std::string to_string(CertRule rule) {
  switch (rule) {
    case CertRule::Axiom: return "Axiom";
    case CertRule::InternalSplit: return "InternalSplit";
    case CertRule::ExternalSplit: return "ExternalSplit";
    case CertRule::EdgeSplit: return "EdgeSplit";
    case CertRule::PathPeel: return "PathPeel";
    case CertRule::CommutatorWalk: return "CommutatorWalk";
  }
  return "?";
}

namespace {

CertRule rule_from_string(const std::string& s) {
  if (s == "Axiom") return CertRule::Axiom;
  if (s == "InternalSplit") return CertRule::InternalSplit;
  if (s == "ExternalSplit") return CertRule::ExternalSplit;
  if (s == "EdgeSplit") return CertRule::EdgeSplit;
  if (s == "PathPeel") return CertRule::PathPeel;
  if (s == "CommutatorWalk") return CertRule::CommutatorWalk;
  throw ValidationError("unknown certificate rule: " + s);
}

// ---- Structural detection ------------------------------------------------

struct PathInfo {
  Edge base_edge;
  std::vector<int> inner;  // ordered from base_edge.u to base_edge.v
};

struct SubdivStructure {
  std::vector<int> base;  // odd-degree vertices, sorted
  std::vector<PathInfo> paths;
  std::optional<Edge> unsubdivided;
};

SubdivStructure detect_structure(const Graph& g) {
  if (g.weighted())
    throw PreconditionError("subdivision certification requires an unweighted graph");
  if (!g.connected()) throw NotASubdivisionError("graph is disconnected");

  SubdivStructure st;
  std::vector<int> deg = g.degrees();
  std::vector<char> is_base(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    if (deg[v] % 2 == 1) {
      st.base.push_back(v);
      is_base[v] = 1;
    }
  }
  if (st.base.empty()) throw NotASubdivisionError("no odd-degree vertices, base would be empty");
  if (st.base.size() < 3)
    throw NotASubdivisionError("base graph needs at least 3 vertices, found " +
                               std::to_string(st.base.size()));
  for (int v = 0; v < g.n; ++v)
    if (!is_base[v] && deg[v] != 2)
      throw NotASubdivisionError("even-degree vertex " + std::to_string(v) + " has degree " +
                                 std::to_string(deg[v]) + ", inserted vertices must have degree 2");

  auto adj = g.adjacency();
  std::vector<char> visited(g.n, 0);
  for (const Edge& e : g.edges)
    if (is_base[e.u] && is_base[e.v]) {
      if (st.unsubdivided) throw NotASubdivisionError("more than one unsubdivided edge");
      st.unsubdivided = e;
    }

  // Walk each inserted path from a base attachment; inserted vertices have
  // degree 2, so the trail is forced.
  for (int start = 0; start < g.n; ++start) {
    if (is_base[start] || visited[start]) continue;
    bool boundary = is_base[adj[start][0]] || is_base[adj[start][1]];
    if (!boundary) continue;
    int from = is_base[adj[start][0]] ? adj[start][0] : adj[start][1];
    int u = from;
    std::vector<int> inner;
    int prev = from, cur = start;
    while (!is_base[cur]) {
      visited[cur] = 1;
      inner.push_back(cur);
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
    }
    int v = cur;
    if (u == v)
      throw NotASubdivisionError("inserted path loops back to base vertex " + std::to_string(u));
    if (v < u) std::reverse(inner.begin(), inner.end());
    st.paths.push_back({make_edge(u, v), std::move(inner)});
  }
  for (int v = 0; v < g.n; ++v)
    if (!is_base[v] && !visited[v])
      throw NotASubdivisionError("inserted vertices around vertex " + std::to_string(v) +
                                 " form a cycle with no base attachment");

  std::sort(st.paths.begin(), st.paths.end(),
            [](const PathInfo& a, const PathInfo& b) { return a.base_edge < b.base_edge; });
  std::vector<Edge> base_edges;
  if (st.unsubdivided) base_edges.push_back(*st.unsubdivided);
  for (std::size_t i = 0; i < st.paths.size(); ++i) base_edges.push_back(st.paths[i].base_edge);
  std::sort(base_edges.begin(), base_edges.end());
  for (std::size_t i = 1; i < base_edges.size(); ++i)
    if (base_edges[i - 1] == base_edges[i])
      throw NotASubdivisionError("parallel connections between base vertices " +
                                 std::to_string(base_edges[i].u) + " and " +
                                 std::to_string(base_edges[i].v));

  std::vector<std::size_t> sizes;
  for (const PathInfo& p : st.paths) sizes.push_back(p.inner.size());
  std::sort(sizes.begin(), sizes.end());
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i - 1] == sizes[i])
      throw NotASubdivisionError("two inserted paths with equal size " +
                                 std::to_string(sizes[i]));
  return st;
}

// ---- Emission --------------------------------------------------------------

class CertBuilder {
 public:
  explicit CertBuilder(int n) { cert_.n = n; }

  int add_x(CertRule rule, std::vector<int> premises, std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    auto key = std::make_pair(false, flatten(vertices));
    auto it = index_of_.find(key);
    if (it != index_of_.end()) return it->second;
    CertEntry e;
    e.rule = rule;
    e.premises = std::move(premises);
    e.vertices = std::move(vertices);
    return adopt(std::move(e), std::move(key));
  }

  int add_zz(CertRule rule, std::vector<int> premises, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    std::vector<int> flat;
    for (const Edge& e : edges) {
      flat.push_back(e.u);
      flat.push_back(e.v);
    }
    auto key = std::make_pair(true, std::move(flat));
    auto it = index_of_.find(key);
    if (it != index_of_.end()) return it->second;
    CertEntry e;
    e.rule = rule;
    e.premises = std::move(premises);
    e.is_zz = true;
    e.edges = std::move(edges);
    return adopt(std::move(e), std::move(key));
  }

  Certificate take() { return std::move(cert_); }

 private:
  static std::vector<int> flatten(const std::vector<int>& v) { return v; }

  int adopt(CertEntry e, std::pair<bool, std::vector<int>> key) {
    int idx = static_cast<int>(cert_.entries.size());
    cert_.entries.push_back(std::move(e));
    index_of_.emplace(std::move(key), idx);
    return idx;
  }

  Certificate cert_;
  std::map<std::pair<bool, std::vector<int>>, int> index_of_;
};

}  // namespace

Certificate certify_asym_subdivision(const Graph& g) {
  SubdivStructure st = detect_structure(g);
  CertBuilder b(g.n);

  std::vector<int> all(g.n);
  for (int v = 0; v < g.n; ++v) all[v] = v;
  int ax_x = b.add_x(CertRule::Axiom, {}, all);
  int ax_zz = b.add_zz(CertRule::Axiom, {}, g.edges);

  std::vector<char> is_base(g.n, 0);
  for (int v : st.base) is_base[v] = 1;
  std::vector<int> inserted;
  for (int v = 0; v < g.n; ++v)
    if (!is_base[v]) inserted.push_back(v);

  int e_base = b.add_x(CertRule::InternalSplit, {ax_x}, st.base);
  int e_inserted = inserted.empty() ? -1 : b.add_x(CertRule::InternalSplit, {ax_x}, inserted);

  // Midpoints of odd-size inserted paths peel off together; each path's
  // remainder peels off separately.
  std::vector<int> v0;
  for (const PathInfo& p : st.paths)
    if (p.inner.size() % 2 == 1) v0.push_back(p.inner[p.inner.size() / 2]);
  std::sort(v0.begin(), v0.end());
  int e_v0 = v0.empty() ? -1 : b.add_x(CertRule::PathPeel, {e_inserted}, v0);

  std::map<Edge, int> t_entry;  // per base edge: the set used to single it out
  for (const PathInfo& p : st.paths) {
    if (p.inner.size() == 1) {
      t_entry[p.base_edge] = e_v0;
      continue;
    }
    std::vector<int> rest;
    int mid = p.inner.size() % 2 == 1 ? p.inner[p.inner.size() / 2] : -1;
    for (int v : p.inner)
      if (v != mid) rest.push_back(v);
    t_entry[p.base_edge] = b.add_x(CertRule::PathPeel, {e_inserted}, rest);
  }

  // Every base edge yields the X-pair of its endpoints: subdivided edges by
  // splitting the base against the edge's inserted set, the lone unsubdivided
  // edge by an internal split of the base (it is the only edge of G[base]).
  std::map<Edge, int> pair_entry;
  std::vector<Edge> base_edge_list;
  for (const PathInfo& p : st.paths) base_edge_list.push_back(p.base_edge);
  if (st.unsubdivided) base_edge_list.push_back(*st.unsubdivided);
  std::sort(base_edge_list.begin(), base_edge_list.end());
  for (const Edge& be : base_edge_list) {
    if (st.unsubdivided && be == *st.unsubdivided)
      pair_entry[be] = b.add_x(CertRule::InternalSplit, {e_base}, {be.u, be.v});
    else
      pair_entry[be] = b.add_x(CertRule::ExternalSplit, {e_base, t_entry[be]}, {be.u, be.v});
  }

  // Split each pair into singletons against the inserted set of another edge
  // at an endpoint of base degree >= 3; only the anchor endpoint touches it.
  std::map<int, std::vector<Edge>> incident;
  for (const Edge& be : base_edge_list) {
    incident[be.u].push_back(be);
    incident[be.v].push_back(be);
  }
  std::map<int, int> singleton;
  for (const Edge& be : base_edge_list) {
    int anchor = -1;
    Edge other{};
    for (int cand : {be.u, be.v}) {
      if (incident[cand].size() < 3) continue;
      for (const Edge& oe : incident[cand])
        if (!(oe == be) && t_entry.count(oe)) {
          anchor = cand;
          other = oe;
          break;
        }
      if (anchor != -1) break;
    }
    if (anchor == -1)
      throw NotASubdivisionError("base edge " + std::to_string(be.u) + "-" +
                                 std::to_string(be.v) +
                                 " has no endpoint with another subdivided edge");
    int mate = anchor == be.u ? be.v : be.u;
    int pre = pair_entry[be];
    int t = t_entry[other];
    singleton[anchor] = b.add_x(CertRule::ExternalSplit, {pre, t}, {anchor});
    singleton[mate] = b.add_x(CertRule::ExternalSplit, {pre, t}, {mate});
  }

  // Walk along each inserted path, alternating the two commutator identities;
  // the first edge comes from splitting the endpoint against the path.
  for (const PathInfo& p : st.paths) {
    int u = p.base_edge.u, v = p.base_edge.v;
    int prev_x = singleton.at(u);
    int prev_zz = b.add_zz(CertRule::EdgeSplit, {singleton.at(u), t_entry[p.base_edge]},
                           {make_edge(u, p.inner.front())});
    for (std::size_t i = 0; i < p.inner.size(); ++i) {
      int here = p.inner[i];
      int e_x = b.add_x(CertRule::CommutatorWalk, {ax_x, prev_zz, prev_x}, {here});
      int nxt = i + 1 < p.inner.size() ? p.inner[i + 1] : v;
      int e_zz = b.add_zz(CertRule::CommutatorWalk, {ax_zz, e_x, prev_zz},
                          {make_edge(here, nxt)});
      prev_x = e_x;
      prev_zz = e_zz;
    }
  }
  if (st.unsubdivided)
    b.add_zz(CertRule::EdgeSplit,
             {singleton.at(st.unsubdivided->u), singleton.at(st.unsubdivided->v)},
             {*st.unsubdivided});

  return b.take();
}

// ---- Verification ----------------------------------------------------------

namespace {

std::vector<int> parity_class(const Graph& g, const std::vector<int>& s,
                              const std::vector<int>& t, bool odd) {
  std::vector<char> in_t(g.n, 0);
  for (int v : t) in_t[v] = 1;
  auto adj = g.adjacency();
  std::vector<int> out;
  for (int u : s) {
    int c = 0;
    for (int w : adj[u]) c += in_t[w];
    if ((c % 2 == 1) == odd) out.push_back(u);
  }
  return out;
}

void require(bool cond, int idx, const std::string& msg) {
  if (!cond)
    throw ValidationError("entry " + std::to_string(idx) + ": " + msg);
}

}  // namespace

void verify_certificate(const Certificate& cert, const Graph& g) {
  if (cert.n != g.n) throw ValidationError("certificate qubit count does not match graph");
  std::vector<int> all(g.n);
  for (int v = 0; v < g.n; ++v) all[v] = v;

  for (std::size_t k = 0; k < cert.entries.size(); ++k) {
    const CertEntry& e = cert.entries[k];
    int idx = static_cast<int>(k);
    for (int p : e.premises)
      require(p >= 0 && static_cast<std::size_t>(p) < k, idx, "premise must precede the entry");
    auto premise = [&](std::size_t i) -> const CertEntry& {
      require(i < e.premises.size(), idx, "missing premise");
      return cert.entries[e.premises[i]];
    };
    if (e.is_zz) {
      require(!e.edges.empty(), idx, "empty edge set");
      require(std::is_sorted(e.edges.begin(), e.edges.end()) &&
                  std::adjacent_find(e.edges.begin(), e.edges.end()) == e.edges.end(),
              idx, "edge set must be sorted and duplicate-free");
      for (const Edge& ed : e.edges)
        require(g.has_edge(ed.u, ed.v), idx, "edge not present in the graph");
    } else {
      require(!e.vertices.empty(), idx, "empty vertex set");
      require(std::is_sorted(e.vertices.begin(), e.vertices.end()) &&
                  std::adjacent_find(e.vertices.begin(), e.vertices.end()) == e.vertices.end(),
              idx, "vertex set must be sorted and duplicate-free");
      for (int v : e.vertices) require(v >= 0 && v < g.n, idx, "vertex out of range");
    }

    switch (e.rule) {
      case CertRule::Axiom: {
        require(e.premises.empty(), idx, "axiom takes no premises");
        if (e.is_zz)
          require(e.edges == g.edges, idx, "edge axiom must cover all edges");
        else
          require(e.vertices == all, idx, "vertex axiom must cover all vertices");
        if (k == 0) require(!e.is_zz, idx, "entry 0 must be the mixer axiom");
        break;
      }
      case CertRule::InternalSplit: {
        require(e.premises.size() == 1, idx, "internal split takes one premise");
        const CertEntry& s = premise(0);
        require(!s.is_zz && !e.is_zz, idx, "internal split applies to vertex sets");
        std::vector<int> odd = parity_class(g, s.vertices, s.vertices, true);
        std::vector<int> even = parity_class(g, s.vertices, s.vertices, false);
        require(e.vertices == odd || e.vertices == even, idx,
                "output is not a degree-parity class of the premise");
        break;
      }
      case CertRule::ExternalSplit: {
        require(e.premises.size() == 2, idx, "external split takes two premises");
        const CertEntry& s = premise(0);
        const CertEntry& t = premise(1);
        require(!s.is_zz && !t.is_zz && !e.is_zz, idx, "external split applies to vertex sets");
        std::vector<int> inter;
        std::set_intersection(s.vertices.begin(), s.vertices.end(), t.vertices.begin(),
                              t.vertices.end(), std::back_inserter(inter));
        require(inter.empty(), idx, "premise sets must be disjoint");
        std::vector<int> odd = parity_class(g, s.vertices, t.vertices, true);
        std::vector<int> even = parity_class(g, s.vertices, t.vertices, false);
        require(e.vertices == odd || e.vertices == even, idx,
                "output is not a neighbor-parity class of the premises");
        break;
      }
      case CertRule::EdgeSplit: {
        require(e.premises.size() == 2, idx, "edge split takes two premises");
        const CertEntry& s = premise(0);
        const CertEntry& t = premise(1);
        require(!s.is_zz && !t.is_zz && e.is_zz, idx, "edge split maps vertex sets to edges");
        std::vector<int> inter;
        std::set_intersection(s.vertices.begin(), s.vertices.end(), t.vertices.begin(),
                              t.vertices.end(), std::back_inserter(inter));
        require(inter.empty(), idx, "premise sets must be disjoint");
        std::vector<char> in_s(g.n, 0), in_t(g.n, 0);
        for (int v : s.vertices) in_s[v] = 1;
        for (int v : t.vertices) in_t[v] = 1;
        std::vector<Edge> crossing;
        for (const Edge& ed : g.edges)
          if ((in_s[ed.u] && in_t[ed.v]) || (in_s[ed.v] && in_t[ed.u])) crossing.push_back(ed);
        require(e.edges == crossing, idx, "output must be the full crossing edge set");
        break;
      }
      case CertRule::PathPeel: {
        require(e.premises.size() == 1, idx, "path peel takes one premise");
        const CertEntry& s = premise(0);
        require(!s.is_zz && !e.is_zz, idx, "path peel applies to vertex sets");
        Graph sub = g.induced(s.vertices);
        auto comps = sub.components();
        auto deg = sub.degrees();
        std::vector<std::vector<int>> paths;  // local labels, ordered end to end
        for (const auto& comp : comps) {
          int end = -1;
          for (int v : comp) {
            require(deg[v] <= 2, idx, "premise must induce disjoint paths");
            if (deg[v] <= 1) end = v;
          }
          require(end != -1, idx, "premise must induce disjoint paths, found a cycle");
          auto adj = sub.adjacency();
          std::vector<int> order{end};
          int prev = -1, cur = end;
          while (true) {
            int nxt = -1;
            for (int w : adj[cur])
              if (w != prev) nxt = w;
            if (nxt == -1) break;
            prev = cur;
            cur = nxt;
            order.push_back(cur);
          }
          require(order.size() == comp.size(), idx, "premise must induce disjoint paths");
          paths.push_back(std::move(order));
        }
        std::vector<std::size_t> sizes;
        for (const auto& p : paths)
          if (p.size() > 1) sizes.push_back(p.size());
        std::sort(sizes.begin(), sizes.end());
        require(std::adjacent_find(sizes.begin(), sizes.end()) == sizes.end(), idx,
                "nontrivial path sizes must be pairwise distinct");

        std::vector<int> midpoints;
        for (const auto& p : paths)
          if (p.size() % 2 == 1) midpoints.push_back(s.vertices[p[p.size() / 2]]);
        std::sort(midpoints.begin(), midpoints.end());
        bool ok = e.vertices == midpoints;
        for (const auto& p : paths) {
          if (ok) break;
          std::vector<int> rest;
          for (std::size_t i = 0; i < p.size(); ++i)
            if (!(p.size() % 2 == 1 && i == p.size() / 2)) rest.push_back(s.vertices[p[i]]);
          std::sort(rest.begin(), rest.end());
          ok = !rest.empty() && e.vertices == rest;
        }
        require(ok, idx, "output is neither the midpoint set nor a path remainder");
        break;
      }
      case CertRule::CommutatorWalk: {
        require(e.premises.size() == 3, idx, "commutator walk takes three premises");
        const CertEntry& ax = premise(0);
        if (!e.is_zz) {
          // X_b = f_{ZZ_ab}(mixer) - X_a.
          require(!ax.is_zz && ax.vertices == all, idx,
                  "first premise must be the full mixer sum");
          const CertEntry& zz = premise(1);
          const CertEntry& xa = premise(2);
          require(zz.is_zz && zz.edges.size() == 1, idx, "second premise must be a single edge");
          require(!xa.is_zz && xa.vertices.size() == 1, idx,
                  "third premise must be a single vertex");
          int a = xa.vertices[0];
          Edge ed = zz.edges[0];
          require(ed.u == a || ed.v == a, idx, "vertex premise must lie on the edge premise");
          int bvert = ed.u == a ? ed.v : ed.u;
          require(e.vertices == std::vector<int>{bvert}, idx,
                  "output must be the other endpoint of the edge");
        } else {
          // ZZ_bc = f_{X_b}(phase) - ZZ_ab, valid when deg(b) = 2.
          require(ax.is_zz && ax.edges == g.edges, idx,
                  "first premise must be the full phase sum");
          const CertEntry& xb = premise(1);
          const CertEntry& zz = premise(2);
          require(!xb.is_zz && xb.vertices.size() == 1, idx,
                  "second premise must be a single vertex");
          require(zz.is_zz && zz.edges.size() == 1, idx, "third premise must be a single edge");
          int bvert = xb.vertices[0];
          Edge ed = zz.edges[0];
          require(ed.u == bvert || ed.v == bvert, idx,
                  "vertex premise must lie on the edge premise");
          int a = ed.u == bvert ? ed.v : ed.u;
          auto adj = g.adjacency();
          require(adj[bvert].size() == 2, idx, "walk vertex must have degree 2");
          int c = adj[bvert][0] == a ? adj[bvert][1] : adj[bvert][0];
          require(e.edges == std::vector<Edge>{make_edge(bvert, c)}, idx,
                  "output must be the next edge of the walk");
        }
        break;
      }
    }
  }
  if (!cert.entries.empty()) {
    const CertEntry& first = cert.entries.front();
    if (first.rule != CertRule::Axiom || first.is_zz || first.vertices != all)
      throw ValidationError("entry 0 must be the mixer axiom");
  }
}

bool covers_all_singletons(const Certificate& cert, const Graph& g) {
  std::vector<char> have_x(g.n, 0);
  std::set<Edge> have_zz;
  for (const CertEntry& e : cert.entries) {
    if (!e.is_zz && e.vertices.size() == 1) have_x[e.vertices[0]] = 1;
    if (e.is_zz && e.edges.size() == 1) have_zz.insert(e.edges[0]);
  }
  for (int v = 0; v < g.n; ++v)
    if (!have_x[v]) return false;
  for (const Edge& e : g.edges)
    if (!have_zz.count(e)) return false;
  return true;
}

// ---- Serialization ---------------------------------------------------------

std::string serialize_certificate(const Certificate& cert) {
  std::ostringstream out;
  for (std::size_t i = 0; i < cert.entries.size(); ++i) {
    const CertEntry& e = cert.entries[i];
    out << i << ' ' << to_string(e.rule);
    for (int p : e.premises) out << ' ' << p;
    if (e.is_zz) {
      out << " ZZ";
      for (const Edge& ed : e.edges) out << ' ' << ed.u << '-' << ed.v;
    } else {
      out << " X";
      for (int v : e.vertices) out << ' ' << v;
    }
    out << '\n';
  }
  return out.str();
}

Certificate parse_certificate(const std::string& text) {
  Certificate cert;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::size_t idx;
    std::string rule_s;
    if (!(ls >> idx >> rule_s)) throw ValidationError("malformed certificate line: " + line);
    if (idx != cert.entries.size())
      throw ValidationError("certificate entries must be numbered consecutively");
    CertEntry e;
    e.rule = rule_from_string(rule_s);
    std::string tok;
    bool in_elements = false;
    while (ls >> tok) {
      if (tok == "X") {
        in_elements = true;
        e.is_zz = false;
      } else if (tok == "ZZ") {
        in_elements = true;
        e.is_zz = true;
      } else if (!in_elements) {
        e.premises.push_back(std::stoi(tok));
      } else if (e.is_zz) {
        auto dash = tok.find('-');
        if (dash == std::string::npos)
          throw ValidationError("malformed edge token: " + tok);
        e.edges.push_back(make_edge(std::stoi(tok.substr(0, dash)),
                                    std::stoi(tok.substr(dash + 1))));
      } else {
        e.vertices.push_back(std::stoi(tok));
      }
    }
    if (!in_elements) throw ValidationError("certificate line lacks an element set: " + line);
    cert.entries.push_back(std::move(e));
  }
  for (const CertEntry& e : cert.entries)
    if (!e.is_zz && e.rule == CertRule::Axiom) {
      cert.n = static_cast<int>(e.vertices.size());
      break;
    }
  return cert;
}

}  // namespace dla
