#pragma once

#include <string>
#include <vector>

#include "dla/graph.hpp"

namespace dla {

/*
 * Derivation rules for membership certificates. Every entry asserts that the
 * sum over its vertex set (X entries) or edge set (ZZ entries) lies in the
 * instance algebra, derived from earlier entries:
 *
 *  - Axiom: X over all vertices (the mixer) or ZZ over all edges (the phase).
 *  - InternalSplit: X_S splits into its degree-parity classes within G[S].
 *  - ExternalSplit: X_S splits by parity of neighbor counts in a disjoint T.
 *  - EdgeSplit: disjoint X_S and X_T yield ZZ over the S-T crossing edges.
 *  - PathPeel: when G[S] is disjoint paths of pairwise distinct nontrivial
 *    sizes, the odd-path midpoints peel off, as does each path's remainder.
 *  - CommutatorWalk: X_b from ZZ_{ab} and X_a against the mixer axiom, or
 *    ZZ_{bc} from X_b and ZZ_{ab} against the phase axiom when deg(b) = 2.
 */
enum class CertRule {
  Axiom,
  InternalSplit,
  ExternalSplit,
  EdgeSplit,
  PathPeel,
  CommutatorWalk,
};

std::string to_string(CertRule rule);

struct CertEntry {
  CertRule rule = CertRule::Axiom;
  std::vector<int> premises;
  bool is_zz = false;
  std::vector<int> vertices;  // X entries: sorted vertex set
  std::vector<Edge> edges;    // ZZ entries: sorted edge set

  friend bool operator==(const CertEntry&, const CertEntry&) = default;
};

struct Certificate {
  int n = 0;
  std::vector<CertEntry> entries;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/*
 * Builds a freeness certificate for an asymmetric subdivision of an odd
 * graph: entry 0 is the mixer axiom and the result derives X for every single
 * vertex and ZZ for every single edge. Throws NotASubdivisionError naming the
 * violated structural property otherwise.
 */
Certificate certify_asym_subdivision(const Graph& g);

// Replays every rule application structurally against g; throws
// ValidationError on the first invalid step.
void verify_certificate(const Certificate& cert, const Graph& g);

// True when the certificate contains X({u}) for every vertex and ZZ({e}) for
// every edge of g.
bool covers_all_singletons(const Certificate& cert, const Graph& g);

/*
 * Line format, one entry per line:
 *   <index> <rule> <premise>... X <v>...
 *   <index> <rule> <premise>... ZZ <u>-<v>...
 */
std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

}  // namespace dla
