#include "dla/pauli.hpp"

#include <algorithm>

namespace dla {

std::vector<double> xz_star_spectrum(const Graph& g, int u) {
  if (u < 0 || u >= g.n) throw ParameterError("vertex out of range");
  auto adj = g.adjacency();
  const std::vector<int>& nbrs = adj[u];
  int d = static_cast<int>(nbrs.size());
  if (d == 0) throw PreconditionError("star spectrum needs a vertex of positive degree");
  if (d > 25) throw UnsupportedSizeError("star spectrum supports degree <= 25");
  std::vector<double> r(d);
  for (int i = 0; i < d; ++i) r[i] = g.weight(*g.edge_index(u, nbrs[i]));

  std::vector<double> out;
  out.reserve(std::size_t{1} << (d - 1));
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << (d - 1)); ++signs) {
    double s = r[d - 1];
    for (int i = 0; i + 1 < d; ++i) s += (signs >> i & 1) ? -r[i] : r[i];
    out.push_back(s * s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dla
