#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace farmrisk {

enum class RankMethod { kExactDP, kNormalApprox };

std::string_view rank_method_name(RankMethod m);

struct RankTestResult {
  // #{x_i > y_j} + 0.5 #{x_i == y_j}.
  double u = 0.0;
  double p_two_sided = 1.0;
  RankMethod method = RankMethod::kExactDP;
  std::size_t n = 0;
  std::size_t m = 0;
};

// Two-sided Mann-Whitney U test. Exact when the pooled sample has no ties
// and n*m <= 10000, otherwise the tie-corrected normal approximation with
// continuity correction. Throws ParameterError on an empty sample.
RankTestResult mann_whitney(std::span<const double> x, std::span<const double> y);

// P(U = u) for u = 0..n*m under H0 with distinct values.
std::vector<double> u_distribution(std::size_t n, std::size_t m);

// 2 * min(P(U <= u), P(U >= u)), capped at 1.
double exact_two_sided_p(double u, std::size_t n, std::size_t m);

}  // namespace farmrisk
