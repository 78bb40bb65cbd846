#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "farmrisk/common/matrix.hpp"

namespace farmrisk {

struct GraphEdge {
  std::uint32_t to = 0;
  double weight = 0.0;
};

// Undirected weighted graph; every edge is stored in both adjacency lists.
struct NeighborGraph {
  std::size_t n = 0;
  std::vector<std::vector<GraphEdge>> adjacency;

  [[nodiscard]] std::size_t edge_count() const;
  [[nodiscard]] std::optional<double> weight(std::size_t a, std::size_t b) const;
};

// Each row links to its k nearest rows (Euclidean; ties to the smaller
// index); the directed relation is symmetrized by union. Throws
// ParameterError unless 1 <= k < n.
NeighborGraph knn_graph(const Matrix& vectors, std::size_t k);

// Connected components as lists of node indices, ordered by smallest member.
std::vector<std::vector<std::size_t>> connected_components(const NeighborGraph& graph);

}  // namespace farmrisk
