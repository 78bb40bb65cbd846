#include "farmrisk/manifold/isomap.hpp"

namespace farmrisk {

Embedding isomap(const Matrix& vectors, const IsomapOptions& options) {
  const NeighborGraph graph = knn_graph(vectors, options.neighbors);
  return classical_mds(geodesics(graph), options.dims);
}

}  // namespace farmrisk
