#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "farmrisk/common/error.hpp"
#include "farmrisk//common/rng.hpp"
#include "farmrisk/manifold/isomap.hpp"

using namespace farmrisk;

namespace {

Matrix euclidean(const Matrix& x) {
  const std::size_t n = x.rows();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t c = 0; c < x.cols(); ++c) s += (x(i, c) - x(j, c)) * (x(i, c) - x(j, c));
      d(i, j) = std::sqrt(s);
    }
  }
  return d;
}

// Floyd-Warshall over the graph's adjacency.
Matrix floyd(const NeighborGraph& g) {
  const double inf = std::numeric_limits<double>::infinity();
  Matrix d(g.n, g.n, inf);
  for (std::size_t i = 0; i < g.n; ++i) {
    d(i, i) = 0;
    for (const auto& e : g.adjacency[i]) d(i, e.to) = std::min(d(i, e.to), e.weight);
  }
  for (std::size_t k = 0; k < g.n; ++k) {
    for (std::size_t i = 0; i < g.n; ++i) {
      for (std::size_t j = 0; j < g.n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
    }
  }
  return d;
}

Matrix random_points(std::uint64_t seed, std::size_t n, std::size_t dim) {
  Rng rng = make_rng(seed);
  Matrix x(n, dim);
  for (double& v : x.data()) v = uniform01(rng);
  return x;
}

}  // namespace

TEST_CASE("knn graph of three collinear points") {
  const Matrix x = Matrix::from_rows({{0}, {1}, {2}});
  const NeighborGraph g = knn_graph(x, 2);
  CHECK(g.edge_count() == 3);
  CHECK(*g.weight(0, 1) == 1.0);
  CHECK(*g.weight(1, 2) == 1.0);
  CHECK(*g.weight(0, 2) == 2.0);
  CHECK_THROWS_AS(knn_graph(x, 3), ParameterError);
  CHECK_THROWS_AS(knn_graph(x, 0), ParameterError);
}

TEST_CASE("knn graph properties") {
  const Matrix x = random_points(1, 40, 5);
  for (std::size_t k : {1, 3, 7}) {
    const NeighborGraph g = knn_graph(x, k);
    for (std::size_t i = 0; i < g.n; ++i) {
      CHECK(g.adjacency[i].size() >= k);
      for (const auto& e : g.adjacency[i]) {
        CHECK(e.weight >= 0.0);
        CHECK(g.weight(e.to, i) == e.weight);
      }
    }
  }
  const NeighborGraph full = knn_graph(x, 39);
  CHECK(full.edge_count() == 40 * 39 / 2);
}

TEST_CASE("knn ties go to the smaller index") {
  // Point 0 is equidistant from 1 and 2; with k=1 it links to 1.
  const Matrix x = Matrix::from_rows({{0.0}, {-1.0}, {1.0}, {5.0}});
  const NeighborGraph g = knn_graph(x, 1);
  CHECK(g.weight(0, 1).has_value());
  // 2's nearest is 0, so 0-2 exists through 2's list only.
  CHECK(g.weight(2, 0).has_value());
  CHECK_FALSE(g.weight(1, 2).has_value());
}

TEST_CASE("duplicated points give zero-weight edges") {
  const Matrix x = Matrix::from_rows({{1, 1}, {1, 1}, {3, 3}});
  const NeighborGraph g = knn_graph(x, 1);
  CHECK(*g.weight(0, 1) == 0.0);
}

TEST_CASE("geodesics") {
  NeighborGraph chain;
  chain.n = 3;
  chain.adjacency = {{{1, 1.0}}, {{0, 1.0}, {2, 1.0}}, {{1, 1.0}}};
  const Matrix d = geodesics(chain);
  CHECK(d(0, 2) == 2.0);
  CHECK(d(2, 0) == 2.0);

  NeighborGraph pairs;
  pairs.n = 4;
  pairs.adjacency = {{{1, 1.0}}, {{0, 1.0}}, {{3, 1.0}}, {{2, 1.0}}};
  CHECK_THROWS_AS(geodesics(pairs), ConnectivityError);
  const auto comps = connected_components(pairs);
  REQUIRE(comps.size() == 2);
  CHECK(comps[1] == std::vector<std::size_t>{2, 3});

  // Complete Euclidean graph: geodesic = direct distance.
  const Matrix x = random_points(2, 12, 3);
  const Matrix full = geodesics(knn_graph(x, 11));
  const Matrix e = euclidean(x);
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) CHECK(full(i, j) == doctest::Approx(e(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("geodesics agree with Floyd-Warshall and satisfy the triangle inequality") {
  for (std::uint64_t seed = 3; seed < 8; ++seed) {
    const Matrix x = random_points(seed, 50, 4);
    const NeighborGraph g = knn_graph(x, 6);
    if (connected_components(g).size() != 1) continue;
    const Matrix d = geodesics(g);
    const Matrix f = floyd(g);
    for (std::size_t i = 0; i < 50; ++i) {
      CHECK(d(i, i) == 0.0);
      for (std::size_t j = 0; j < 50; ++j) {
        REQUIRE(d(i, j) == doctest::Approx(f(i, j)).epsilon(1e-12));
        REQUIRE(d(i, j) == d(j, i));
        for (std::size_t k = 0; k < 50; ++k) REQUIRE(d(i, j) <= d(i, k) + d(k, j) + 1e-12);
      }
    }
  }
}

TEST_CASE("geodesics are invariant under rotation") {
  const Matrix x = random_points(9, 30, 2);
  Matrix r(30, 2);
  const double c = std::cos(0.7), s = std::sin(0.7);
  for (std::size_t i = 0; i < 30; ++i) {
    r(i, 0) = c * x(i, 0) - s * x(i, 1) + 3.0;
    r(i, 1) = s * x(i, 0) + c * x(i, 1) - 1.0;
  }
  const Matrix a = geodesics(knn_graph(x, 8));
  const Matrix b = geodesics(knn_graph(r, 8));
  for (std::size_t i = 0; i < a.data().size(); ++i) CHECK(a.data()[i] == doctest::Approx(b.data()[i]).epsilon(1e-9));
}

TEST_CASE("mds of a pair") {
  const Matrix d = Matrix::from_rows({{0, 4}, {4, 0}});
  const Embedding e = classical_mds(d);
  CHECK(e.coordinates(0, 0) == doctest::Approx(2.0));
  CHECK(e.coordinates(1, 0) == doctest::Approx(-2.0));
  CHECK(e.eigenvalues[0] == doctest::Approx(8.0));
  CHECK(e.rank_warning);
  CHECK(e.coordinates(0, 1) == 0.0);
  CHECK(e.coordinates(1, 1) == 0.0);
}

TEST_CASE("mds of zeros") {
  const Embedding e = classical_mds(Matrix(5, 5));
  for (double v : e.coordinates.data()) CHECK(v == 0.0);
  CHECK(e.rank_warning);
}

TEST_CASE("mds of an equilateral triangle") {
  const Matrix d = Matrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const Embedding e = classical_mds(d);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double dx = e.coordinates(i, 0) - e.coordinates(j, 0);
      const double dy = e.coordinates(i, 1) - e.coordinates(j, 1);
      CHECK(std::abs(std::hypot(dx, dy) - d(i, j)) <= 1e-9);
    }
  }
}

TEST_CASE("mds reproduces 2-D Euclidean distances") {
  const Matrix x = random_points(11, 25, 2);
  const Matrix d = euclidean(x);
  const Embedding e = classical_mds(d);
  CHECK_FALSE(e.rank_warning);
  CHECK(e.eigenvalues[0] >= e.eigenvalues[1]);
  CHECK(euclidean(e.coordinates).data().size() == d.data().size());
  const Matrix back = euclidean(e.coordinates);
  for (std::size_t i = 0; i < d.data().size(); ++i) CHECK(std::abs(back.data()[i] - d.data()[i]) <= 1e-8);
  // First clear entry of each column is positive.
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < 25; ++i) {
      if (std::abs(e.coordinates(i, c)) > 1e-9) {
        CHECK(e.coordinates(i, c) > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("mds input checks") {
  CHECK_THROWS_AS(classical_mds(Matrix(2, 3)), ParameterError);
  CHECK_THROWS_AS(classical_mds(Matrix::from_rows({{0, 1}, {2, 0}})), ParameterError);
  CHECK_THROWS_AS(classical_mds(Matrix::from_rows({{1, 1}, {1, 0}})), ParameterError);
}

TEST_CASE("double centering has zero row sums") {
  const Matrix x = random_points(12, 60, 3);
  const Matrix b = double_centered_gram(euclidean(x));
  double bmax = 0;
  for (double v : b.data()) bmax = std::max(bmax, std::abs(v));
  for (std::size_t i = 0; i < 60; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < 60; ++j) s += b(i, j);
    CHECK(std::abs(s) <= 1e-9 * 60 * bmax);
  }
}

TEST_CASE("isomap of collinear points") {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({static_cast<double>(i), 0.0, 0.0});
  const Embedding e = isomap(Matrix::from_rows(rows), {2, 2});
  const double sign = e.coordinates(0, 0) > 0 ? 1.0 : -1.0;
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(sign * e.coordinates(static_cast<std::size_t>(i), 0) - (4.5 - i)) <= 1e-9);
    CHECK(std::abs(e.coordinates(static_cast<std::size_t>(i), 1)) <= 1e-9);
  }
}

TEST_CASE("isomap of identical points") {
  const Matrix x(6, 3, 0.25);
  const Embedding e = isomap(x, {2, 2});
  for (double v : e.coordinates.data()) CHECK(v == 0.0);
}

TEST_CASE("isomap shape on a large input") {
  const Matrix x = random_points(13, 1095, 32);
  const Embedding e = isomap(x);
  CHECK(e.coordinates.rows() == 1095);
  CHECK(e.coordinates.cols() == 2);
  for (double v : e.coordinates.data()) CHECK(std::isfinite(v));
}

TEST_CASE("isomap is deterministic") {
  const Matrix x = random_points(14, 120, 6);
  CHECK(isomap(x, {10, 2}).coordinates == isomap(x, {10, 2}).coordinates);
}
