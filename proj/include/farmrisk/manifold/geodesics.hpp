#pragma once

#include "farmrisk/common/matrix.hpp"
#include "farmrisk/manifold/knn_graph.hpp"

namespace farmrisk {

// Single-source shortest path lengths from `source` (binary-heap Dijkstra).
// Unreachable nodes get +inf.
std::vector<double> dijkstra(const NeighborGraph& graph, std::size_t source);

// All-pairs geodesic distances, symmetric with zero diagonal. A disconnected
// graph throws ConnectivityError listing the components; there is no
// infinite-distance fallback.
Matrix geodesics(const NeighborGraph& graph);

}  // namespace farmrisk
