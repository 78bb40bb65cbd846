#pragma once

#include <vector>

#include "farmrisk/common/matrix.hpp"

namespace farmrisk {

struct Embedding {
  Matrix coordinates;               // n x dims
  std::vector<double> eigenvalues;  // retained, descending
  // Fewer than `dims` eigenvalues were positive; the matching columns are 0.
  bool rank_warning = false;
};

// Classical (Torgerson) MDS: B = -1/2 J D^2 J, keep the `dims` largest
// eigenpairs, coordinates = eigenvector * sqrt(eigenvalue). Eigenvalues at or
// below 1e-9 of the largest are treated as zero. Each eigenvector is signed
// so that its first non-negligible entry is positive.
Embedding classical_mds(const Matrix& distances, std::size_t dims = 2);

// B = -1/2 J D^2 J (exposed for tests).
Matrix double_centered_gram(const Matrix& distances);

}  // namespace farmrisk
