#include "farmrisk/manifold/geodesics.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <string>

namespace farmrisk {

std::vector<double> dijkstra(const NeighborGraph& graph, std::size_t source) {
  using Item = std::pair<double, std::uint32_t>;
  std::vector<double> dist(graph.n, std::numeric_limits<double>::infinity());
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, static_cast<std::uint32_t>(source));
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& e : graph.adjacency[u]) {
      const double nd = d + e.weight;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        heap.emplace(nd, e.to);
      }
    }
  }
  return dist;
}

Matrix geodesics(const NeighborGraph& graph) {
  const auto components = connected_components(graph);
  if (components.size() > 1) {
    std::string sizes;
    std::string firsts;
    for (std::size_t c = 0; c < components.size() && c < 8; ++c) {
      if (c) {
        sizes += ", ";
        firsts += ", ";
      }
      sizes += std::to_string(components[c].size());
      firsts += std::to_string(components[c].front());
    }
    if (components.size() > 8) {
      sizes += ", ...";
      firsts += ", ...";
    }
    throw ConnectivityError("neighbor graph has " + std::to_string(components.size()) +
                            " connected components (sizes " + sizes + "; first members " + firsts +
                            "); increase the number of neighbors k");
  }
  const std::size_t n = graph.n;
  Matrix d(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto row = dijkstra(graph, s);
    std::copy(row.begin(), row.end(), d.row(s).begin());
  }
  // Both directions are valid path lengths; summation order can differ in
  // the last bit, so keep the shorter one.
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = std::min(d(i, j), d(j, i));
      d(i, j) = m;
      d(j, i) = m;
    }
  }
  return d;
}

}  // namespace farmrisk
