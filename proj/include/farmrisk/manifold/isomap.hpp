#pragma once

#include "farmrisk/manifold/geodesics.hpp"
#include "farmrisk/manifold/knn_graph.hpp"
#include "farmrisk/manifold/mds.hpp"

namespace farmrisk {

struct IsomapOptions {
  std::size_t neighbors = 20;
  std::size_t dims = 2;
};

// knn_graph -> geodesics -> classical_mds.
Embedding isomap(const Matrix& vectors, const IsomapOptions& options = {});

}  // namespace farmrisk
