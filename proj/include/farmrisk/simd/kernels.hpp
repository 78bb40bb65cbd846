#pragma once

// Data-parallel numeric kernels with a scalar reference and an AVX2 variant,
// selected once at startup from CPUID. FARMRISK_SIMD=scalar|avx2 overrides.
//
// Every scalar reference accumulates in the same four-lane order as the AVX2
// variant, so both paths return bit-identical results and analysis outputs do
// not depend on the host CPU.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace farmrisk::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
// Throws ParameterError if the CPU lacks the ISA.
void set_isa(Isa isa);

// ||a - b||^2.
double squared_distance(std::span<const double> a, std::span<const double> b);

// out[i] = ||query - rows[i]||^2 for a row-major (out.size() x dim) matrix.
void squared_distances(std::span<const double> query, std::span<const double> rows,
                       std::size_t dim, std::span<double> out);

// 2-D points and centroids, interleaved x,y. Writes the nearest centroid
// (lowest index on ties) and returns the summed squared distance.
double assign_nearest(std::span<const double> points_xy, std::span<const double> centroids_xy,
                      std::span<std::uint32_t> labels);

// gram = -1/2 J (D o D) J for a symmetric n x n distance matrix, J the
// centering matrix.
void double_center(std::span<const double> dist, std::size_t n, std::span<double> gram);

namespace scalar {
double squared_distance(const double* a, const double* b, std::size_t n);
double assign_nearest(const double* points_xy, std::size_t n, const double* centroids_xy,
                      std::size_t k, std::uint32_t* labels);
void double_center(const double* dist, std::size_t n, double* gram);
}  // namespace scalar

namespace avx2 {
double squared_distance(const double* a, const double* b, std::size_t n);
double assign_nearest(const double* points_xy, std::size_t n, const double* centroids_xy,
                      std::size_t k, std::uint32_t* labels);
void double_center(const double* dist, std::size_t n, double* gram);
}  // namespace avx2

}  // namespace farmrisk::simd
