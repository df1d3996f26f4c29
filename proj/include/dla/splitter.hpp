#pragma once

#include <cstdint>

#include "dla/graph.hpp"
#include "dla/partition.hpp"

namespace dla {

/*
 * Splits a vertex set by degree parity inside its own induced subgraph,
 * recursing on each side until one side is empty. Blocks where every vertex
 * has the same internal degree parity are not refined further.
 */
VertexPartition split_vertices_internal(const Graph& g);

/*
 * Repeatedly scans ordered block pairs (S, T), S != T, with blocks ordered by
 * (size, smallest member), splits the first S that separates by the parity of
 * |N(u) cap T|, and restarts the scan; stops at a fixpoint.
 */
VertexPartition split_vertices_external(const Graph& g, VertexPartition p);

// Edge companion of a vertex partition: one block pooling all within-block
// edges, plus one block per unordered block pair with crossing edges.
EdgePartition split_edges(const Graph& g, const VertexPartition& p);

struct BfsSplitResult {
  VertexPartition partition;
  int rounds = 0;
};

/*
 * Parallel refinement: every vertex gets the signature of parity counts of
 * its neighbors in each current block, and blocks split by signature. At most
 * n-1 rounds run; the fixpoint is the terminal partition.
 */
BfsSplitResult bfs_splitting_trace(const Graph& g);
VertexPartition bfs_splitting(const Graph& g);

struct SplitVerdict {
  bool splittable = false;
  VertexPartition partition;
};

// True when the terminal partition is all singletons.
SplitVerdict is_splittable(const Graph& g);

/*
 * Applies uniformly random applicable parity splits (choosing S = T performs
 * an internal split) until none remain. The terminal partition is the same
 * for every schedule; this exists to exercise that property.
 */
VertexPartition random_schedule_terminal(const Graph& g, std::uint64_t seed);

/*
 * Recursive freeness test: graphs with at most `cap` vertices are settled by
 * comparing the brute-force closure dimension against the classified
 * multi-angle dimension; larger graphs recurse on the degree-parity classes
 * and demand distinct cross-neighborhoods on the other side.
 */
bool check_free_recursive(const Graph& g, int cap);

}  // namespace dla
