#include "periscreen/gstat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "periscreen/errors.hpp"

namespace periscreen::gstat {

GStat g_statistic(std::span<const double> ordinates) {
  if (ordinates.empty()) throw std::invalid_argument("g_statistic: empty ordinate vector");
  double sum = 0.0;
  double mx = ordinates[0];
  int arg = 1;
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    const double v = ordinates[i];
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("g_statistic: ordinates must be non-negative and finite");
    sum += v;
    if (v > mx) {  // strict: ties keep the smallest index
      mx = v;
      arg = static_cast<int>(i) + 1;
    }
  }
  if (sum == 0.0)
    throw degenerate_input("g_statistic: all ordinates are zero (constant series)");
  return {mx / sum, arg};
}

GStat g_statistic(const spectral::Periodogram& pg) { return g_statistic(pg.ordinates); }

double fisher_exact_tail(double x, int q) {
  if (q < 1) throw std::invalid_argument("fisher_exact_tail: need q >= 1");
  if (std::isnan(x)) throw std::invalid_argument("fisher_exact_tail: x is NaN");
  if (x >= 1.0) return 0.0;
  if (x <= 1.0 / q) return 1.0;

  // x in (1/q, 1): 1 <= floor(1/x) <= q, so the cast below is safe.
  const int p = static_cast<int>(std::min(std::floor(1.0 / x), static_cast<double>(q)));
  const double lg_q1 = std::lgamma(static_cast<double>(q) + 1.0);
  double sum = 0.0, comp = 0.0;  // Kahan accumulator
  for (int j = 1; j <= p; ++j) {
    // 1 - j*x via fma: a single rounding, and exact zero at the series edge.
    const double base = std::fma(static_cast<double>(-j), x, 1.0);
    if (base <= 0.0) continue;  // the j = floor(1/x) term can round to <= 0
    const double lt = lg_q1 - std::lgamma(static_cast<double>(j) + 1.0) -
                      std::lgamma(static_cast<double>(q - j) + 1.0) +
                      (q - 1) * std::log(base);
    // Terms beyond exp(700) only occur where the true tail is 1 to double
    // precision (tiny x, massive cancellation); short-circuit instead of
    // overflowing to inf - inf.
    if (lt > 700.0) return 1.0;
    const double term = (j & 1) ? std::exp(lt) : -std::exp(lt);
    const double yk = term - comp;
    const double tk = sum + yk;
    comp = (tk - sum) - yk;
    sum = tk;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double gumbel_tail(double y) {
  if (std::isnan(y)) throw std::invalid_argument("gumbel_tail: y is NaN");
  // y -> -inf: exp(-y) -> inf, expm1(-inf) = -1, tail = 1. y -> +inf: tail ~ exp(-y).
  return -std::expm1(-std::exp(-y));
}

GTestResult g_test(std::span<const double> ordinates) {
  const GStat s = g_statistic(ordinates);
  const int q = static_cast<int>(ordinates.size());
  GTestResult r;
  r.g = s.g;
  r.argmax_index = s.argmax_index;
  r.q = q;
  r.y = q * s.g - std::log(static_cast<double>(q));
  r.p_exact = fisher_exact_tail(s.g, q);
  r.p_gumbel = gumbel_tail(r.y);
  return r;
}

GTestResult g_test(const spectral::Periodogram& pg) { return g_test(std::span(pg.ordinates)); }

GTestResult g_test(const spectral::SeriesSample& s, spectral::KernelKind kind) {
  return g_test(spectral::periodogram(s, kind));
}

}  // namespace periscreen::gstat
