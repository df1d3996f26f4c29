#include "dla/classifier.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <unordered_set>

#include "dla/certificate.hpp"
#include "dla/modp.hpp"
#include "dla/pauli.hpp"
#include "dla/splitter.hpp"

namespace dla {

DlaDimension DlaDimension::from_exact(BigInt v) {
  DlaDimension d;
  d.exact = std::move(v);
  if (d.exact == 0) {
    d.log2 = -std::numeric_limits<double>::infinity();
    return d;
  }
  unsigned bit = boost::multiprecision::msb(d.exact);
  if (bit <= 52) {
    d.log2 = std::log2(d.exact.convert_to<double>());
  } else {
    BigInt top = d.exact >> (bit - 52);
    d.log2 = std::log2(top.convert_to<double>()) + static_cast<double>(bit - 52);
  }
  return d;
}

std::string to_string(MaLabel label) {
  switch (label) {
    case MaLabel::So2n: return "So2n";
    case MaLabel::So2nPlusSo2n: return "So2nPlusSo2n";
    case MaLabel::SuPlusSu: return "SuPlusSu";
    case MaLabel::SpPlusSp: return "SpPlusSp";
    case MaLabel::SoPlusSo: return "SoPlusSo";
    case MaLabel::Su: return "Su";
    case MaLabel::DirectSumOfComponents: return "DirectSumOfComponents";
  }
  return "?";
}

std::string to_string(Freeness f) {
  switch (f) {
    case Freeness::Splittable: return "Splittable";
    case Freeness::CertifiedSubdivision: return "CertifiedSubdivision";
    case Freeness::CertifiedWeighted: return "CertifiedWeighted";
    case Freeness::CertifiedExtension: return "CertifiedExtension";
    case Freeness::BruteForcedFree: return "BruteForcedFree";
    case Freeness::BruteForcedNotFree: return "BruteForcedNotFree";
    case Freeness::Undetermined: return "Undetermined";
  }
  return "?";
}

bool is_free_verdict(Freeness f) {
  switch (f) {
    case Freeness::Splittable:
    case Freeness::CertifiedSubdivision:
    case Freeness::CertifiedWeighted:
    case Freeness::CertifiedExtension:
    case Freeness::BruteForcedFree:
      return true;
    case Freeness::BruteForcedNotFree:
    case Freeness::Undetermined:
      return false;
  }
  return false;
}

namespace {

// Two-coloring; returns false when an odd cycle exists, otherwise fills color.
bool bipartition(const Graph& g, std::vector<int>& color) {
  auto adj = g.adjacency();
  color.assign(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::pair<MaLabel, BigInt> classify_component(const Graph& c) {
  int k = c.n;
  BigInt n(k);
  std::vector<int> deg = c.degrees();
  int maxdeg = 0;
  for (int d : deg) maxdeg = std::max(maxdeg, d);

  if (c.m() == k - 1 && maxdeg <= 2) return {MaLabel::So2n, 2 * n * n - n};
  if (c.m() == k && maxdeg == 2) return {MaLabel::So2nPlusSo2n, 4 * n * n - 2 * n};

  std::vector<int> color;
  if (!bipartition(c, color)) return {MaLabel::SuPlusSu, (BigInt(1) << (2 * k - 1)) - 2};
  // su(2^{k-1}) has dimension 4^{k-1} - 1.
  if (k % 2 == 1) return {MaLabel::Su, (BigInt(1) << (2 * k - 2)) - 1};
  int n1 = 0;
  for (int v = 0; v < k; ++v) n1 += color[v];
  // k even makes both color classes the same parity, so the case is
  // independent of which class is counted.
  if (n1 % 2 == 1)
    return {MaLabel::SpPlusSp, (BigInt(1) << (2 * k - 2)) + (BigInt(1) << (k - 1))};
  return {MaLabel::SoPlusSo, (BigInt(1) << (2 * k - 2)) - (BigInt(1) << (k - 1))};
}

}  // namespace

std::pair<DlaClass, DlaDimension> classify_multiangle(const Graph& g) {
  if (g.weighted()) throw PreconditionError("classification requires an unweighted graph");
  auto comps = g.components();
  DlaClass cls;
  cls.component_count = static_cast<int>(comps.size());
  BigInt total = 0;
  MaLabel last = MaLabel::DirectSumOfComponents;
  for (const auto& comp : comps) {
    auto [label, dim] = classify_component(g.induced(comp));
    total += dim;
    last = label;
  }
  cls.label = comps.size() == 1 ? last : MaLabel::DirectSumOfComponents;
  return {cls, DlaDimension::from_exact(total)};
}

bool weighted_freeness_check(const Graph& g) {
  if (!g.weighted()) throw PreconditionError("weighted criterion requires a weighted graph");
  constexpr double kTol = 1e-12;
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v)
    if (adj[v].size() > 20)
      throw UnsupportedSizeError("weighted criterion supports degree <= 20");
  for (double w : g.weights)
    if (w == 0.0) return false;

  std::vector<std::vector<double>> sums(g.n);
  for (int v = 0; v < g.n; ++v) {
    int d = static_cast<int>(adj[v].size());
    std::vector<double> r(d);
    for (int i = 0; i < d; ++i) r[i] = g.weight(*g.edge_index(v, adj[v][i]));
    std::vector<double>& vals = sums[v];
    vals.reserve(std::size_t{1} << d);
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << d); ++signs) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += (signs >> i & 1) ? -r[i] : r[i];
      vals.push_back(s);
    }
    std::sort(vals.begin(), vals.end());
  }
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      std::size_t i = 0, j = 0;
      while (i < sums[u].size() && j < sums[v].size()) {
        double d = sums[u][i] - sums[v][j];
        if (std::fabs(d) <= kTol) return false;
        if (d < 0)
          ++i;
        else
          ++j;
      }
    }
  return true;
}

DlaDimension dimension_lower_bound(const Graph& g, const VertexPartition& p) {
  if (g.weighted()) throw PreconditionError("lower bound requires an unweighted graph");
  if (p.n != g.n) throw ParameterError("partition does not match graph");
  std::vector<int> singles;
  for (const auto& b : p.blocks)
    if (b.size() == 1) singles.push_back(b.front());
  if (singles.empty()) return DlaDimension::from_exact(0);
  std::sort(singles.begin(), singles.end());
  return classify_multiangle(g.induced(singles)).second;
}

long long orbit_fixed_dimension(const Graph& g) {
  if (g.weighted()) throw PreconditionError("orbit counting requires an unweighted graph");
  if (g.n > 7) throw UnsupportedSizeError("orbit counting supports n <= 7");
  ClosureOptions copts;
  copts.qubit_cap = 7;
  auto res = lie_closure(multiangle_generators<Rational>(g), copts);

  /*
   * The multi-angle algebra is generated by single Pauli strings and the
   * bracket of two strings is again a single string, so the reduced basis
   * consists of single-term rows forming a permutation-invariant string set.
   */
  std::set<PauliTerm> strings;
  for (const auto& row : res.basis.rows()) {
    if (row.terms.size() != 1)
      throw ValidationError("multi-angle closure produced a non-string row");
    strings.insert(row.terms.front().first);
  }
  auto auts = automorphism_group(g);
  auto permute_mask = [&](std::uint64_t mask, const std::vector<int>& perm) {
    std::uint64_t out = 0;
    for (int q = 0; q < g.n; ++q)
      if (mask >> q & 1) out |= 1ull << perm[q];
    return out;
  };
  long long orbits = 0;
  std::set<PauliTerm> seen;
  for (const PauliTerm& t : strings) {
    if (seen.count(t)) continue;
    ++orbits;
    for (const auto& perm : auts)
      seen.insert(PauliTerm{permute_mask(t.x, perm), permute_mask(t.z, perm)});
  }
  return orbits;
}

namespace {

struct StageTimer {
  DlaReport& rep;
  std::string name;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  StageTimer(DlaReport& r, std::string s) : rep(r), name(std::move(s)) {}
  ~StageTimer() {
    auto stop = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rep.timings_ms.emplace_back(name, ms);
  }
};

}  // namespace

DlaReport analyze(const Graph& g, const AnalysisOptions& opts) {
  DlaReport rep;
  rep.n = g.n;
  rep.m = g.m();
  rep.weighted = g.weighted();
  rep.partition = VertexPartition::single_block(g.n);

  bool uniform = true;
  for (double w : g.weights)
    if (w != g.weights.front() || w == 0.0) uniform = false;
  bool has_shape = !g.weighted() || uniform;
  Graph shape = has_shape ? g.unweighted_copy() : Graph{};
  if (g.weighted() && uniform)
    rep.method_trail.push_back("uniform weights: analyzed as unweighted shape");

  {
    // The multi-angle algebra only sees which edges carry a nonzero weight.
    StageTimer t(rep, "classify");
    Graph effective = g.unweighted_copy();
    if (g.weighted() && !uniform) {
      std::vector<Edge> nonzero;
      for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (g.weights[i] != 0.0) nonzero.push_back(g.edges[i]);
      effective = Graph::make(g.n, std::move(nonzero));
    }
    auto [cls, dim] = classify_multiangle(effective);
    rep.ma_class = cls;
    rep.ma_dim = dim;
  }

  if (has_shape) {
    StageTimer t(rep, "bfs_splitting");
    rep.partition = bfs_splitting(shape);
    rep.method_trail.push_back("bfs_splitting");
    if (rep.partition.fully_split()) {
      rep.freeness = Freeness::Splittable;
      rep.lower_bound = rep.ma_dim;
      return rep;
    }
  }

  if (has_shape) {
    StageTimer t(rep, "certify_subdivision");
    try {
      Certificate cert = certify_asym_subdivision(shape);
      verify_certificate(cert, shape);
      rep.method_trail.push_back("certify_subdivision");
      rep.freeness = Freeness::CertifiedSubdivision;
      rep.lower_bound = rep.ma_dim;
      return rep;
    } catch (const NotASubdivisionError& e) {
      rep.method_trail.push_back(std::string("not a subdivision: ") + e.what());
    }
  }

  if (g.weighted()) {
    StageTimer t(rep, "weighted_check");
    try {
      if (weighted_freeness_check(g)) {
        rep.method_trail.push_back("weighted_check");
        rep.freeness = Freeness::CertifiedWeighted;
        rep.lower_bound = rep.ma_dim;
        return rep;
      }
      rep.method_trail.push_back("weighted_check failed");
    } catch (const UnsupportedSizeError& e) {
      rep.method_trail.push_back(std::string("weighted_check skipped: ") + e.what());
    }
  }

  if (opts.allow_bruteforce && g.n <= opts.max_closure_qubits) {
    StageTimer t(rep, "closure");
    ClosureOptions copts;
    copts.qubit_cap = opts.max_closure_qubits;
    copts.maxdim = opts.max_closure_dim;
    bool truncated = false;
    std::size_t dim = 0;
    if (has_shape) {
      rep.method_trail.push_back("closure on split generators");
      EdgePartition ep = split_edges(shape, rep.partition);
      auto res = lie_closure(split_generators<Rational>(shape, rep.partition, ep), copts);
      truncated = res.truncated;
      dim = res.basis.dim();
    } else {
      auto [hm, hp] = hamiltonians_for_graph<Fp>(g);
      auto res = lie_closure<Fp>({hm, hp}, copts);
      truncated = res.truncated;
      dim = res.basis.dim();
      rep.method_trail.push_back("closure on instance Hamiltonians");
    }
    if (truncated) {
      rep.method_trail.push_back("closure truncated at dimension cap");
    } else {
      rep.brute_dim = static_cast<long long>(dim);
      if (BigInt(dim) == rep.ma_dim.exact) {
        rep.freeness = Freeness::BruteForcedFree;
        rep.lower_bound = rep.ma_dim;
      } else {
        rep.freeness = Freeness::BruteForcedNotFree;
        rep.lower_bound = DlaDimension::from_exact(BigInt(dim));
      }
      return rep;
    }
  }

  rep.freeness = Freeness::Undetermined;
  {
    StageTimer t(rep, "lower_bound");
    rep.lower_bound = has_shape ? dimension_lower_bound(shape, rep.partition)
                                : DlaDimension::from_exact(0);
  }
  return rep;
}

}  // namespace dla
