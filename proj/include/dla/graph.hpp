#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dla/errors.hpp"

namespace dla {

// Undirected edge, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/*
 * Simple undirected graph on vertices 0..n-1. Edges are kept strictly sorted,
 * which makes the edge list a canonical representation. An empty weight vector
 * means the graph is unweighted; otherwise weights run parallel to edges.
 */
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<double> weights;

  static Graph make(int n, std::vector<Edge> edges);
  static Graph make_weighted(int n, std::vector<Edge> edges, std::vector<double> weights);

  bool weighted() const { return !weights.empty(); }
  int m() const { return static_cast<int>(edges.size()); }
  double weight(std::size_t e) const { return weighted() ? weights[e] : 1.0; }

  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency() const;
  bool has_edge(int u, int v) const;
  std::optional<std::size_t> edge_index(int u, int v) const;

  std::vector<std::vector<int>> components() const;
  bool connected() const;

  // Subgraph induced by a sorted, duplicate-free vertex list; vertex i of the
  // result corresponds to vs[i].
  Graph induced(const std::vector<int>& vs) const;

  // Same edge set with weights dropped.
  Graph unweighted_copy() const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

// ---- Families --------------------------------------------------------------
// All generators use fixed 0-based labelings documented in the README.

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
// Star with k leaves: center 0, leaves 1..k.
Graph star_graph(int k);
// Spider: center 0, arms laid out consecutively; arm i of length L occupies
// the next L labels walking outward from the center.
Graph spider_graph(const std::vector<int>& arm_lengths);
// Two rails of a ladder with the top rail extended by k extra vertices on the
// left. Top rail u_{-k}..u_{n-1} maps to 0..n+k-1, bottom rail v_0..v_{n-1}
// maps to n+k..n+k+n-1, rungs join u_i to v_i for i = 0..n-1.
Graph extended_ladder_graph(int n, int k);
// (w+1) x (h+1) grid plus one pendant vertex. Pendant is label 0, grid vertex
// (i, j) maps to 1 + j*(w+1) + i, and the pendant attaches to (0, 0).
Graph grid_plus1_graph(int w, int h);

// Parses "Path(4)", "Spider(1,2,3)", "Ladder(3,1)", "GridPlus1(4,3)", ...
Graph parse_family_spec(const std::string& spec);

// ---- Sampling and enumeration ----------------------------------------------

// Erdos-Renyi G(n, p); pair (i, j), i < j, in lexicographic order is included
// when the next PRNG double is below p. Sample index i uses seed + i.
Graph sample_er(int n, double p, std::uint64_t seed);

// All connected graphs on n vertices (1 <= n <= 7), one canonical
// representative per isomorphism class, in a deterministic order.
std::vector<Graph> enumerate_connected(int n);

// All automorphisms as permutation vectors; identity first. n <= 10.
std::vector<std::vector<int>> automorphism_group(const Graph& g);

struct CutAssignment {
  std::vector<bool> side;
  double value = 0.0;
};

// Exact MaxCut by exhaustive search, n <= 28. Unweighted values are exact
// integers; weighted values are recomputed from scratch at each improvement.
CutAssignment brute_maxcut(const Graph& g);

// ---- Subdivision reduction ---------------------------------------------

/*
 * Reduction of a connected unweighted graph to an asymmetric subdivision of an
 * odd graph. Base vertices and edges live in the label space of `subdivided`;
 * the base is the original graph plus any pendant edges added to kill even
 * degrees. path_of maps each base edge to the ordered list of inserted
 * vertices along it, so the path lists are disjoint and cover exactly
 * subdivided.V minus the base vertices.
 */
struct SubdivisionMap {
  Graph original;
  Graph subdivided;
  std::vector<int> base_vertices;
  std::vector<Edge> base_edges;
  std::map<Edge, std::vector<int>> path_of;
  std::vector<std::pair<int, int>> added_pendants;
};

SubdivisionMap reduce_to_subdivision(const Graph& g);

// ---- Freeness-preserving extensions ------------------------------------

enum class ExtensionKind {
  // Every host even-parity vertex sends exactly one join; each attached vertex
  // w receives c_w >= 1 joins with parity(c_w) == parity(deg(w) in attached).
  PartitionEven,
  // Every host odd-parity vertex sends exactly one join; each attached vertex
  // w receives c_w >= 1 joins with parity(c_w) != parity(deg(w) in attached).
  PartitionOdd,
  // Attached graph is a forest; every attached odd-parity vertex sends exactly
  // one join; every host even-parity vertex receives an odd number >= 1.
  Forest,
};

struct Extension {
  ExtensionKind kind;
  Graph attached;
  // (host vertex, attached vertex); attached vertex i becomes host.n + i.
  std::vector<std::pair<int, int>> joins;
};

// Validates the hypotheses for the requested extension kind and returns the
// joined graph. Throws ValidationError naming the violated condition.
Graph extend_free(const Graph& g, const Extension& ext);

// Bit b(v) = deg(v) mod 2.
std::vector<std::uint8_t> degree_parity_vector(const Graph& g);

}  // namespace dla
