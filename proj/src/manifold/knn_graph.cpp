#include "farmrisk/manifold/knn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "farmrisk/simd/kernels.hpp"

namespace farmrisk {

std::size_t NeighborGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adjacency) total += a.size();
  return total / 2;
}

std::optional<double> NeighborGraph::weight(std::size_t a, std::size_t b) const {
  for (const auto& e : adjacency[a]) {
    if (e.to == b) return e.weight;
  }
  return std::nullopt;
}

NeighborGraph knn_graph(const Matrix& vectors, std::size_t k) {
  const std::size_t n = vectors.rows();
  const std::size_t dim = vectors.cols();
  if (k < 1) throw ParameterError("k must be >= 1");
  if (k >= n) {
    throw ParameterError("k = " + std::to_string(k) + " requires more than k points, got " +
                         std::to_string(n));
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(n * k);
  std::vector<double> sq(n);
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    simd::squared_distances(vectors.row(i), vectors.data(), dim, sq);
    order.resize(n);
    std::iota(order.begin(), order.end(), 0U);
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&sq](std::uint32_t a, std::uint32_t b) {
                        return sq[a] < sq[b] || (sq[a] == sq[b] && a < b);
                      });
    for (std::size_t m = 0; m < k; ++m) {
      const auto j = order[m];
      const auto ii = static_cast<std::uint32_t>(i);
      pairs.emplace_back(std::min(ii, j), std::max(ii, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  NeighborGraph g;
  g.n = n;
  g.adjacency.resize(n);
  for (const auto& [a, b] : pairs) {
    const double w = std::sqrt(simd::squared_distance(vectors.row(a), vectors.row(b)));
    g.adjacency[a].push_back({b, w});
    g.adjacency[b].push_back({a, w});
  }
  return g;
}

std::vector<std::vector<std::size_t>> connected_components(const NeighborGraph& graph) {
  std::vector<int> seen(graph.n, 0);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < graph.n; ++s) {
    if (seen[s]) continue;
    auto& comp = components.emplace_back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (const auto& e : graph.adjacency[u]) {
        if (!seen[e.to]) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return components;
}

}  // namespace farmrisk
