#include <atomic>
#include <cstdlib>
#include <string>

#include "farmrisk/common/error.hpp"
#include "farmrisk/simd/kernels.hpp"

namespace farmrisk::simd {

namespace {

Isa detect() {
  Isa isa = isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
  if (const char* env = std::getenv("FARMRISK_SIMD")) {
    const std::string s(env);
    if (s == "scalar") isa = Isa::kScalar;
    if (s == "avx2" && isa_available(Isa::kAvx2)) isa = Isa::kAvx2;
  }
  return isa;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(FARMRISK_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_available(isa)) throw ParameterError(std::string("ISA not available: ") + std::string(isa_name(isa)));
  current().store(isa, std::memory_order_relaxed);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ParameterError("squared_distance: dimension mismatch");
  return active_isa() == Isa::kAvx2 ? avx2::squared_distance(a.data(), b.data(), a.size())
                                    : scalar::squared_distance(a.data(), b.data(), a.size());
}

void squared_distances(std::span<const double> query, std::span<const double> rows,
                       std::size_t dim, std::span<double> out) {
  if (query.size() != dim || rows.size() != out.size() * dim) {
    throw ParameterError("squared_distances: shape mismatch");
  }
  const bool wide = active_isa() == Isa::kAvx2;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* row = rows.data() + i * dim;
    out[i] = wide ? avx2::squared_distance(query.data(), row, dim)
                  : scalar::squared_distance(query.data(), row, dim);
  }
}

double assign_nearest(std::span<const double> points_xy, std::span<const double> centroids_xy,
                      std::span<std::uint32_t> labels) {
  if (points_xy.size() != 2 * labels.size() || centroids_xy.size() % 2 != 0 || centroids_xy.empty()) {
    throw ParameterError("assign_nearest: shape mismatch");
  }
  const std::size_t k = centroids_xy.size() / 2;
  return active_isa() == Isa::kAvx2
             ? avx2::assign_nearest(points_xy.data(), labels.size(), centroids_xy.data(), k, labels.data())
             : scalar::assign_nearest(points_xy.data(), labels.size(), centroids_xy.data(), k, labels.data());
}

void double_center(std::span<const double> dist, std::size_t n, std::span<double> gram) {
  if (dist.size() != n * n || gram.size() != n * n) throw ParameterError("double_center: shape mismatch");
  if (n == 0) return;
  if (active_isa() == Isa::kAvx2) {
    avx2::double_center(dist.data(), n, gram.data());
  } else {
    scalar::double_center(dist.data(), n, gram.data());
  }
}

}  // namespace farmrisk::simd
