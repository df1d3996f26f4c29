#pragma once

#include <algorithm>
#include <vector>

#include "dla/errors.hpp"
#include "dla/graph.hpp"

namespace dla {

/*
 * Partition of the vertex set {0..n-1}. Blocks are sorted internally and the
 * block list is ordered by smallest member, which makes equality structural.
 */
struct VertexPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  static VertexPartition single_block(int n) {
    VertexPartition p;
    p.n = n;
    if (n > 0) {
      p.blocks.emplace_back(n);
      for (int v = 0; v < n; ++v) p.blocks[0][v] = v;
    }
    return p;
  }

  static VertexPartition of_blocks(int n, std::vector<std::vector<int>> blocks) {
    VertexPartition p;
    p.n = n;
    p.blocks = std::move(blocks);
    p.normalize();
    p.validate();
    return p;
  }

  void normalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const std::vector<int>& b) { return b.empty(); }),
                 blocks.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                return a.front() < b.front();
              });
  }

  void validate() const {
    std::vector<bool> seen(n, false);
    std::size_t total = 0;
    for (const auto& b : blocks)
      for (int v : b) {
        if (v < 0 || v >= n || seen[v]) throw ParameterError("blocks do not partition the vertex set");
        seen[v] = true;
        ++total;
      }
    if (total != static_cast<std::size_t>(n))
      throw ParameterError("blocks do not cover the vertex set");
  }

  bool fully_split() const {
    for (const auto& b : blocks)
      if (b.size() != 1) return false;
    return true;
  }

  std::vector<int> block_index() const {
    std::vector<int> idx(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (int v : blocks[b]) idx[v] = static_cast<int>(b);
    return idx;
  }

  // True when every block of *this is contained in some block of coarser.
  bool refines(const VertexPartition& coarser) const {
    if (n != coarser.n) return false;
    std::vector<int> idx = coarser.block_index();
    for (const auto& b : blocks)
      for (std::size_t i = 1; i < b.size(); ++i)
        if (idx[b[i]] != idx[b[0]]) return false;
    return true;
  }

  friend bool operator==(const VertexPartition&, const VertexPartition&) = default;
};

// Partition of a subset of edges into blocks, canonically ordered.
struct EdgePartition {
  std::vector<std::vector<Edge>> blocks;

  void normalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const std::vector<Edge>& b) { return b.empty(); }),
                 blocks.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const std::vector<Edge>& a, const std::vector<Edge>& b) {
                return a.front() < b.front();
              });
  }

  friend bool operator==(const EdgePartition&, const EdgePartition&) = default;
};

}  // namespace dla
