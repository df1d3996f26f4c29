#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

#include "dla/graph.hpp"
#include "dla/partition.hpp"

namespace dla {

using BigInt = boost::multiprecision::cpp_int;

// Dimension kept exactly (it grows like 4^n) together with its log2.
struct DlaDimension {
  BigInt exact;
  double log2 = 0.0;

  static DlaDimension from_exact(BigInt v);
};

/*
 * Isomorphism type of the multi-angle algebra of one connected graph, or the
 * marker for a direct sum over several components. Su is the odd-order
 * bipartite case su(2^{n-1}), of dimension 2^{2n-2} - 1.
 */
enum class MaLabel {
  So2n,
  So2nPlusSo2n,
  SuPlusSu,
  SpPlusSp,
  SoPlusSo,
  Su,
  DirectSumOfComponents,
};

std::string to_string(MaLabel label);

struct DlaClass {
  MaLabel label = MaLabel::DirectSumOfComponents;
  int component_count = 0;
};

/*
 * Closed-form classification of the multi-angle algebra, by component:
 * paths give so(2n); cycles so(2n)+so(2n); connected non-bipartite non-cycle
 * graphs su(2^{n-1})+su(2^{n-1}); bipartite non-path non-cycle graphs split
 * by the parity of n and of one color class into sp+sp, so+so, or the odd-n
 * case su(2^{n-1}). Dimensions add over components.
 */
std::pair<DlaClass, DlaDimension> classify_multiangle(const Graph& g);

enum class Freeness {
  Splittable,
  CertifiedSubdivision,
  CertifiedWeighted,
  CertifiedExtension,
  BruteForcedFree,
  BruteForcedNotFree,
  Undetermined,
};

std::string to_string(Freeness f);
bool is_free_verdict(Freeness f);

struct AnalysisOptions {
  bool allow_bruteforce = true;
  int max_closure_qubits = 8;
  long long max_closure_dim = -1;
};

struct DlaReport {
  std::string id;
  int n = 0;
  int m = 0;
  bool weighted = false;
  Freeness freeness = Freeness::Undetermined;
  long long brute_dim = -1;
  VertexPartition partition;
  DlaClass ma_class;
  DlaDimension ma_dim;
  DlaDimension lower_bound;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<std::string> method_trail;
};

/*
 * Full pipeline: terminal partition (fully split means free), then the
 * subdivision certificate, then the weighted criterion, then brute closure on
 * instances small enough, and otherwise an undetermined verdict with a
 * structural dimension lower bound.
 */
DlaReport analyze(const Graph& g, const AnalysisOptions& opts = {});

/*
 * Weighted freeness criterion: all weights nonzero and, for every pair of
 * distinct vertices, the value sets of signed incident-weight sums are
 * disjoint. Collisions within an absolute tolerance of 1e-12 count as
 * failures, so the check is conservative.
 */
bool weighted_freeness_check(const Graph& g);

// Dimension certified by the singleton blocks of a terminal partition: the
// classified dimension of the subgraph they induce.
DlaDimension dimension_lower_bound(const Graph& g, const VertexPartition& p);

/*
 * Dimension of the subspace of the multi-angle algebra fixed by Aut(g),
 * computed as the number of automorphism orbits of its Pauli-string basis.
 * Supports n <= 7.
 */
long long orbit_fixed_dimension(const Graph& g);

}  // namespace dla
