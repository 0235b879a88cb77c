#pragma once

#include <span>

#include "periscreen/spectral.hpp"

namespace periscreen::gstat {

// Which null tail drives downstream decisions. Both tails are always computed
// and reported; verification experiments need them side by side.
enum class NullTailMethod { FisherExact, Gumbel };

struct GStat {
  double g = 0.0;        // max ordinate / sum of ordinates, in [1/q, 1]
  int argmax_index = 0;  // smallest 1-based frequency index attaining the max
};

struct GTestResult {
  double g = 0.0;
  double y = 0.0;         // q*g - log q, the studentized max minus its centering
  double p_exact = 1.0;   // exact null tail of g under Gaussian noise
  double p_gumbel = 1.0;  // double-exponential tail at y
  int q = 0;
  int argmax_index = 0;
};

// Throws degenerate_input when every ordinate is zero (constant series).
GStat g_statistic(std::span<const double> ordinates);
GStat g_statistic(const spectral::Periodogram& pg);

// Exact null survival function P(g >= x) for the maximum-to-sum ratio of q
// i.i.d. exponential ordinates: the alternating binomial series
//   sum_{j=1..p} (-1)^{j-1} C(q,j) (1-jx)^{q-1},  p = min(floor(1/x), q).
// Terms are evaluated in log space (lgamma) and combined with compensated
// summation; the result is clamped to [0,1]. Conventions: x >= 1 -> 0,
// x <= 1/q -> 1 (g >= 1/q always holds). Relative error is <= 1e-8 whenever
// the value is <= 0.5 and q <= 1e4; cancellation grows as the value
// approaches 1, a regime that never drives rejection decisions.
// Throws std::invalid_argument for NaN x or q < 1.
double fisher_exact_tail(double x, int q);

// 1 - exp(-exp(-y)), computed as -expm1(-exp(-y)) so the deep tail keeps full
// relative precision (~exp(-y) for large y instead of rounding to 0).
// Throws std::invalid_argument for NaN.
double gumbel_tail(double y);

GTestResult g_test(std::span<const double> ordinates);
GTestResult g_test(const spectral::Periodogram& pg);
GTestResult g_test(const spectral::SeriesSample& s,
                   spectral::KernelKind kind = spectral::KernelKind::Auto);

}  // namespace periscreen::gstat
