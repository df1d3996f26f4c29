#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dla/errors.hpp"
#include "dla/graph.hpp"
#include "dla/partition.hpp"
#include "dla/rational.hpp"

namespace dla {

/*
 * A Pauli string on up to 64 qubits in symplectic form: bit q of x / z set
 * means an X / Z factor on qubit q, both bits set means Y. The string stands
 * for the Hermitian operator i^{|x&z|} X^x Z^z. Terms order by (x, z).
 */
struct PauliTerm {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  friend auto operator<=>(const PauliTerm&, const PauliTerm&) = default;
};

struct PauliTermHash {
  std::size_t operator()(const PauliTerm& t) const {
    std::uint64_t h = t.x + 0x9E3779B97F4A7C15ull;
    h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull;
    h ^= t.z + 0x94D049BB133111EBull;
    h = (h ^ (h >> 27)) * 0xBF58476D1CE4E5B9ull;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

inline std::string pauli_string(const PauliTerm& t, int n) {
  std::string s(n, 'I');
  for (int q = 0; q < n; ++q) {
    bool bx = t.x >> q & 1, bz = t.z >> q & 1;
    if (bx && bz)
      s[q] = 'Y';
    else if (bx)
      s[q] = 'X';
    else if (bz)
      s[q] = 'Z';
  }
  return s;
}

// Scalar policy: exact rationals treat only true zero as negligible; doubles
// use one fixed tolerance for every rank decision.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr double kTolerance = 1e-10;
  static bool negligible(double v) { return std::fabs(v) < kTolerance; }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static double one() { return 1.0; }
  static std::string str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }
};

template <>
struct ScalarTraits<Rational> {
  static bool negligible(const Rational& v) { return v.is_zero(); }
  static Rational from_double(double v) {
    double r = std::round(v);
    if (std::fabs(v - r) > 1e-9 || std::fabs(r) > 1e15)
      throw PreconditionError("exact arithmetic requires integer coefficients");
    return Rational(static_cast<long long>(r));
  }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Rational one() { return Rational(1); }
  static std::string str(const Rational& v) { return v.str(); }
};

/*
 * Real linear combination of Pauli strings with the terms sorted and no
 * negligible coefficients. A sum A stands for the anti-Hermitian operator iA,
 * so the whole algebra is handled in real arithmetic.
 */
template <class S>
struct PauliSum {
  int n = 0;
  std::vector<std::pair<PauliTerm, S>> terms;

  bool zero() const { return terms.empty(); }

  void normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
      PauliTerm t = terms[i].first;
      S c = terms[i].second;
      for (++i; i < terms.size() && terms[i].first == t; ++i) c += terms[i].second;
      if (!ScalarTraits<S>::negligible(c)) terms[out++] = {t, c};
    }
    terms.resize(out);
  }
};

template <class S>
PauliSum<S> pauli_zero(int n) {
  PauliSum<S> p;
  p.n = n;
  return p;
}

template <class S>
PauliSum<S> pauli_single(int n, PauliTerm t, S coeff) {
  PauliSum<S> p;
  p.n = n;
  if (!ScalarTraits<S>::negligible(coeff)) p.terms.emplace_back(t, std::move(coeff));
  return p;
}

// X_S: the sum of single-qubit X over the vertex set.
template <class S>
PauliSum<S> x_set(int n, const std::vector<int>& vs) {
  PauliSum<S> p;
  p.n = n;
  for (int v : vs) p.terms.emplace_back(PauliTerm{1ull << v, 0}, ScalarTraits<S>::one());
  p.normalize();
  return p;
}

// ZZ_E: the sum of Z_u Z_v over an edge set, optionally weighted.
template <class S>
PauliSum<S> zz_set(int n, const std::vector<Edge>& es, const std::vector<S>& coeffs = {}) {
  PauliSum<S> p;
  p.n = n;
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::uint64_t z = (1ull << es[i].u) | (1ull << es[i].v);
    p.terms.emplace_back(PauliTerm{0, z}, coeffs.empty() ? ScalarTraits<S>::one() : coeffs[i]);
  }
  p.normalize();
  return p;
}

// Mixer and phase Hamiltonians (H_m, H_p) of a MaxCut instance.
template <class S>
std::pair<PauliSum<S>, PauliSum<S>> hamiltonians_for_graph(const Graph& g) {
  if (g.n > 64) throw UnsupportedSizeError("Pauli engine supports at most 64 qubits");
  std::vector<int> all(g.n);
  for (int v = 0; v < g.n; ++v) all[v] = v;
  std::vector<S> coeffs;
  if (g.weighted()) {
    coeffs.reserve(g.weights.size());
    for (double w : g.weights) coeffs.push_back(ScalarTraits<S>::from_double(w));
  }
  return {x_set<S>(g.n, all), zz_set<S>(g.n, g.edges, coeffs)};
}

// One generator per vertex and per edge, X_u and Z_u Z_v.
template <class S>
std::vector<PauliSum<S>> multiangle_generators(const Graph& g) {
  if (g.n > 64) throw UnsupportedSizeError("Pauli engine supports at most 64 qubits");
  std::vector<PauliSum<S>> gens;
  gens.reserve(g.n + g.edges.size());
  for (int v = 0; v < g.n; ++v) gens.push_back(x_set<S>(g.n, {v}));
  for (const Edge& e : g.edges) gens.push_back(zz_set<S>(g.n, {e}));
  return gens;
}

// X_S per vertex block and ZZ_{E'} per edge block.
template <class S>
std::vector<PauliSum<S>> split_generators(const Graph& g, const VertexPartition& p,
                                          const EdgePartition& q) {
  std::vector<PauliSum<S>> gens;
  for (const auto& b : p.blocks) gens.push_back(x_set<S>(g.n, b));
  for (const auto& b : q.blocks) gens.push_back(zz_set<S>(g.n, b));
  return gens;
}

// a + c*b, merging sorted term lists and dropping negligible results.
template <class S>
void axpy_in_place(PauliSum<S>& a, const S& c, const PauliSum<S>& b) {
  static thread_local std::vector<std::pair<PauliTerm, S>> buf;
  buf.clear();
  buf.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() ||
        (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
      buf.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
      S v = c * b.terms[j].second;
      if (!ScalarTraits<S>::negligible(v)) buf.emplace_back(b.terms[j].first, std::move(v));
      ++j;
    } else {
      S v = a.terms[i].second + c * b.terms[j].second;
      if (!ScalarTraits<S>::negligible(v)) buf.emplace_back(a.terms[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a.terms.swap(buf);
}

template <class S>
PauliSum<S> sum(PauliSum<S> a, const PauliSum<S>& b) {
  if (a.n != b.n) throw DimensionError("qubit counts differ");
  axpy_in_place(a, ScalarTraits<S>::one(), b);
  return a;
}

template <class S>
PauliSum<S> scaled(PauliSum<S> a, const S& c) {
  if (ScalarTraits<S>::negligible(c)) return pauli_zero<S>(a.n);
  for (auto& [t, v] : a.terms) v *= c;
  return a;
}

/*
 * Lie bracket in the real convention: if A and B stand for iA, iB in the
 * algebra, bracket(A, B) = C is the sum with iC = [iA, iB].
 *
 * Strings P1 = (x1, z1), P2 = (x2, z2) contribute only when they anticommute,
 * i.e. |x1 & z2| + |z1 & x2| is odd. The product P1 P2 equals i^phi P3 on
 * P3 = (x1^x2, z1^z2) with
 *   phi = |x1 & z1| + |x2 & z2| + 2|z1 & x2| - |x3 & z3|  (mod 4),
 * which is odd for anticommuting strings, and the contribution to C is
 * 2 c1 c2 with sign + when phi = 3 and - when phi = 1.
 */
template <class S>
void bracket_into(const PauliSum<S>& a, const PauliSum<S>& b, PauliSum<S>& out) {
  if (a.n != b.n) throw DimensionError("qubit counts differ");
  out.n = a.n;
  out.terms.clear();
  for (const auto& [p1, c1] : a.terms)
    for (const auto& [p2, c2] : b.terms) {
      int anti = (std::popcount(p1.x & p2.z) + std::popcount(p1.z & p2.x)) & 1;
      if (!anti) continue;
      std::uint64_t x3 = p1.x ^ p2.x, z3 = p1.z ^ p2.z;
      int phi = (std::popcount(p1.x & p1.z) + std::popcount(p2.x & p2.z) +
                 2 * std::popcount(p1.z & p2.x) - std::popcount(x3 & z3)) & 3;
      S v = c1 * c2 + c1 * c2;
      if (phi != 3) v = -v;
      out.terms.emplace_back(PauliTerm{x3, z3}, std::move(v));
    }
  out.normalize();
}

template <class S>
PauliSum<S> bracket(const PauliSum<S>& a, const PauliSum<S>& b) {
  PauliSum<S> out;
  bracket_into(a, b, out);
  return out;
}

// f_B(A) = -(1/4) [B, [B, A]] in the convention above; for B = Z_a Z_b this
// fixes X_a, so for example f_{H_p} acts on each X-star space of the graph.
template <class S>
PauliSum<S> f_apply(const PauliSum<S>& b, const PauliSum<S>& a) {
  PauliSum<S> inner = bracket(b, a);
  PauliSum<S> outer = bracket(b, inner);
  S quarter = ScalarTraits<S>::one() / (ScalarTraits<S>::one() + ScalarTraits<S>::one() +
                                        ScalarTraits<S>::one() + ScalarTraits<S>::one());
  return scaled(std::move(outer), S(-quarter));
}

/*
 * Row-echelon basis of a subspace of Pauli sums. Pivots are the smallest term
 * of each row, each pivot coefficient is 1, and every inserted row has been
 * reduced against all earlier rows, so no row has support on an earlier row's
 * pivot.
 */
template <class S>
class LieBasis {
 public:
  explicit LieBasis(int n = 0) : n_(n) {}

  int qubits() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<PauliSum<S>>& rows() const { return rows_; }

  void reduce(PauliSum<S>& v) const {
    std::size_t i = 0;
    while (i < v.terms.size()) {
      auto it = pivot_of_.find(v.terms[i].first);
      if (it == pivot_of_.end()) {
        ++i;
        continue;
      }
      // Eliminating at the pivot leaves earlier terms untouched since every
      // term of the pivot row is >= the pivot itself.
      S c = -v.terms[i].second;
      axpy_in_place(v, c, rows_[it->second]);
    }
  }

  bool insert(PauliSum<S> v) { return insert_in_place(v); }

  // Reduces v against the basis and adopts it as a new row when independent.
  // On failure v is left empty but keeps its storage, which lets a closure
  // loop recycle one scratch sum across millions of rejected candidates.
  bool insert_in_place(PauliSum<S>& v) {
    if (v.n != n_) throw DimensionError("qubit counts differ");
    reduce(v);
    if (v.terms.empty()) return false;
    S inv = ScalarTraits<S>::one() / v.terms.front().second;
    for (auto& [t, c] : v.terms) c *= inv;
    // c * (1/c) can round away from one; the pivot must be exactly one so that
    // eliminations cancel it without residue.
    v.terms.front().second = ScalarTraits<S>::one();
    pivot_of_.emplace(v.terms.front().first, rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  bool contains(PauliSum<S> v) const {
    reduce(v);
    return v.terms.empty();
  }

  std::string dump() const {
    std::string out;
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.terms.size(); ++i) {
        if (i) out += '+';
        out += ScalarTraits<S>::str(row.terms[i].second);
        out += '*';
        out += pauli_string(row.terms[i].first, n_);
      }
      out += '\n';
    }
    return out;
  }

 private:
  int n_ = 0;
  std::vector<PauliSum<S>> rows_;
  std::unordered_map<PauliTerm, std::size_t, PauliTermHash> pivot_of_;
};

template <class S>
bool span_membership(const LieBasis<S>& basis, const PauliSum<S>& v) {
  return basis.contains(v);
}

struct ClosureOptions {
  // Stop and report truncation once the dimension exceeds this bound
  // (negative: unbounded).
  long long maxdim = -1;
  // Hard guard on qubit count; closures grow as 4^n.
  int qubit_cap = 8;
};

template <class S>
struct ClosureResult {
  LieBasis<S> basis;
  bool truncated = false;
};

/*
 * Lie closure by breadth-first seeding. Row k is bracketed against the
 * generators only: by the Jacobi identity every nested bracket is a linear
 * combination of right-normed brackets [g_{i1},[g_{i2},[...,g_{ir}]]], so the
 * smallest subspace containing the generators and stable under each ad_{g_i}
 * already is the generated algebra. Rows appended during processing are
 * handled when their own index comes up.
 */
template <class S>
ClosureResult<S> lie_closure(const std::vector<PauliSum<S>>& gens, ClosureOptions opts = {}) {
  int n = gens.empty() ? 0 : gens.front().n;
  for (const auto& gv : gens)
    if (gv.n != n) throw DimensionError("generators disagree on qubit count");
  if (n > opts.qubit_cap)
    throw UnsupportedSizeError("closure on " + std::to_string(n) + " qubits exceeds cap " +
                               std::to_string(opts.qubit_cap));
  ClosureResult<S> res{LieBasis<S>(n), false};
  auto over = [&]() {
    return opts.maxdim >= 0 && res.basis.dim() > static_cast<std::size_t>(opts.maxdim);
  };
  for (const auto& gv : gens) {
    res.basis.insert(gv);
    if (over()) {
      res.truncated = true;
      return res;
    }
  }
  PauliSum<S> c;
  for (std::size_t k = 0; k < res.basis.dim(); ++k) {
    for (const auto& gv : gens) {
      bracket_into(gv, res.basis.rows()[k], c);
      if (c.terms.empty()) continue;
      if (res.basis.insert_in_place(c) && over()) {
        res.truncated = true;
        return res;
      }
    }
  }
  return res;
}

// Multiset of squared signed neighbor-weight sums at u: over all sign choices
// on all but the last incident edge, ((sum of signed weights) + r_last)^2.
// For an unweighted vertex of degree d this is (d - 2k)^2 with multiplicity
// C(d-1, k); the values are the eigenvalues of f_{H_p} on the X-star space.
std::vector<double> xz_star_spectrum(const Graph& g, int u);

}  // namespace dla
