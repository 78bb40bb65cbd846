#include "farmrisk/manifold/mds.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "farmrisk/simd/kernels.hpp"

namespace farmrisk {

namespace {

void check_distance_matrix(const Matrix& d) {
  const std::size_t n = d.rows();
  if (d.cols() != n) throw ParameterError("distance matrix must be square");
  double scale = 0.0;
  for (double v : d.data()) {
    if (!std::isfinite(v)) throw ParameterError("distance matrix has non-finite entries");
    scale = std::max(scale, std::abs(v));
  }
  const double tol = 1e-9 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d(i, i)) > tol) throw ParameterError("distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(d(i, j) - d(j, i)) > tol) throw ParameterError("distance matrix must be symmetric");
    }
  }
}

// Some optimized BLAS builds return garbage on some CPUs; refuse to embed with it.
void check_eigenpairs(const Matrix& b, const std::vector<double>& w, const std::vector<double>& z,
                      std::size_t m) {
  const std::size_t n = b.rows();
  double bmax = 0.0;
  for (double v : b.data()) bmax = std::max(bmax, std::abs(v));
  const double tol = 1e-8 * std::max(bmax, 1.0) * std::sqrt(static_cast<double>(n));
  for (std::size_t c = 0; c < m; ++c) {
    const double* v = z.data() + c * n;
    double norm2 = 0.0;
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      norm2 += v[i] * v[i];
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += b(i, j) * v[j];
      const double r = acc - w[c] * v[i];
      res2 += r * r;
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-6 || std::sqrt(res2) > tol) {
      throw DomainError("symmetric eigensolver returned inaccurate eigenpairs (check the LAPACK/BLAS build)");
    }
  }
}

}  // namespace

Matrix double_centered_gram(const Matrix& distances) {
  const std::size_t n = distances.rows();
  Matrix b(n, n);
  simd::double_center(distances.data(), n, b.data());
  return b;
}

Embedding classical_mds(const Matrix& distances, std::size_t dims) {
  check_distance_matrix(distances);
  if (dims < 1) throw ParameterError("dims must be >= 1");
  const std::size_t n = distances.rows();
  Embedding emb;
  emb.coordinates = Matrix(n, dims);
  emb.eigenvalues.assign(dims, 0.0);
  if (n == 0) return emb;

  const Matrix gram = double_centered_gram(distances);
  Matrix b = gram;
  const std::size_t m = std::min(dims, n);
  const auto ln = static_cast<lapack_int>(n);
  std::vector<double> w(n);
  std::vector<double> z(n * m);
  std::vector<lapack_int> support(2 * m);
  lapack_int found = 0;
  // B is symmetric, so its row-major buffer is also its column-major form.
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'U', ln, b.data().data(), ln, 0.0, 0.0,
      ln - static_cast<lapack_int>(m) + 1, ln, 0.0, &found, w.data(), z.data(), ln, support.data());
  if (info != 0 || found != static_cast<lapack_int>(m)) {
    throw DomainError("symmetric eigensolver failed (info=" + std::to_string(info) + ")");
  }

  // LAPACK returns ascending order; column c of the output holds the c-th largest.
  const double top = w[static_cast<std::size_t>(m - 1)];
  check_eigenpairs(gram, w, z, m);
  const double cutoff = top > 0.0 ? 1e-9 * top : 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t src = m - 1 - c;
    const double lambda = w[src];
    emb.eigenvalues[c] = lambda;
    if (!(lambda > cutoff)) {
      emb.rank_warning = true;
      continue;
    }
    const double* v = z.data() + src * n;
    double vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, std::abs(v[i]));
    double sign = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v[i]) > 1e-9 * vmax) {
        sign = v[i] < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    const double scale = sign * std::sqrt(lambda);
    for (std::size_t i = 0; i < n; ++i) emb.coordinates(i, c) = v[i] * scale;
  }
  if (m < dims) emb.rank_warning = true;
  return emb;
}

}  // namespace farmrisk
