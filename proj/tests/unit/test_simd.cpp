#include <doctest.h>

#include <cstring>
#include <vector>

#include "farmrisk/common/error.hpp"
#include "farmrisk/common/rng.hpp"
#include "farmrisk/simd/kernels.hpp"

using namespace farmrisk;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double scale = 10.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * (uniform01(rng) - 0.5);
  return v;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("scalar squared distance") {
  const double a[] = {1, 2, 3, 4, 5};
  const double b[] = {0, 0, 0, 0, 0};
  CHECK(simd::scalar::squared_distance(a, b, 5) == 55.0);
  CHECK(simd::scalar::squared_distance(a, a, 5) == 0.0);
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
  if (!simd::isa_available(simd::Isa::kAvx2)) {
    MESSAGE("AVX2 not available, skipping");
    return;
  }
  Rng rng = make_rng(42);
  for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 31, 32, 33, 100}) {
    const auto a = random_vec(rng, n), b = random_vec(rng, n);
    CHECK(bit_equal(simd::scalar::squared_distance(a.data(), b.data(), n),
                    simd::avx2::squared_distance(a.data(), b.data(), n)));
  }
  for (std::size_t n : {1, 2, 5, 64, 257}) {
    for (std::size_t k : {1, 2, 3, 4, 7}) {
      const auto pts = random_vec(rng, 2 * n), cen = random_vec(rng, 2 * k);
      std::vector<std::uint32_t> la(n), lb(n);
      const double da = simd::scalar::assign_nearest(pts.data(), n, cen.data(), k, la.data());
      const double db = simd::avx2::assign_nearest(pts.data(), n, cen.data(), k, lb.data());
      CHECK(bit_equal(da, db));
      CHECK(la == lb);
    }
  }
  for (std::size_t n : {1, 2, 3, 5, 8, 13, 64}) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = 5.0 * uniform01(rng);
    }
    std::vector<double> ga(n * n), gb(n * n);
    simd::scalar::double_center(d.data(), n, ga.data());
    simd::avx2::double_center(d.data(), n, gb.data());
    CHECK(std::memcmp(ga.data(), gb.data(), ga.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("dispatch switches between paths") {
  const simd::Isa before = simd::active_isa();
  simd::set_isa(simd::Isa::kScalar);
  CHECK(simd::active_isa() == simd::Isa::kScalar);
  const std::vector<double> a = {1, 2, 3}, b = {3, 2, 1};
  CHECK(simd::squared_distance(a, b) == 8.0);
  if (simd::isa_available(simd::Isa::kAvx2)) {
    simd::set_isa(simd::Isa::kAvx2);
    CHECK(simd::squared_distance(a, b) == 8.0);
  } else {
    CHECK_THROWS_AS(simd::set_isa(simd::Isa::kAvx2), ParameterError);
  }
  simd::set_isa(before);
}

TEST_CASE("assign_nearest breaks ties toward the lower index") {
  const double pts[] = {0.0, 0.0};
  const double cen[] = {1.0, 0.0, -1.0, 0.0};
  std::uint32_t label = 9;
  CHECK(simd::scalar::assign_nearest(pts, 1, cen, 2, &label) == 1.0);
  CHECK(label == 0);
  if (simd::isa_available(simd::Isa::kAvx2)) {
    label = 9;
    simd::avx2::assign_nearest(pts, 1, cen, 2, &label);
    CHECK(label == 0);
  }
}
