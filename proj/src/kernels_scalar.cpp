#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "periscreen/kernels.hpp"

namespace periscreen::spectral {

TrigTable::TrigTable(int n) : n_(n) {
  if (n < 3) throw std::invalid_argument("TrigTable: need n >= 3, got " + std::to_string(n));
  cos_.resize(n);
  sin_.resize(n);
  for (int m = 0; m < n; ++m) {
    const double a = 2.0 * std::numbers::pi * m / n;
    cos_[m] = std::cos(a);
    sin_[m] = std::sin(a);
  }
}

void scalar_batch_kernel(const TrigTable& t, const double* x, int stride, int width,
                         int jmax, double* out) {
  const int n = t.n();
  const double* cv = t.cosv();
  const double* sv = t.sinv();
  const double inv_n = 1.0 / n;
  for (int b = 0; b < width; ++b) {
    for (int j = 1; j <= jmax; ++j) {
      double re = 0.0, im = 0.0;
      int idx = 0;  // (j*k) mod n, maintained incrementally: exact reduction
      for (int k = 0; k < n; ++k) {
        idx += j;
        if (idx >= n) idx -= n;
        const double v = x[static_cast<std::size_t>(k) * stride + b];
        re += v * cv[idx];
        im += v * sv[idx];
      }
      out[static_cast<std::size_t>(j - 1) * stride + b] = (re * re + im * im) * inv_n;
    }
  }
}

}  // namespace periscreen::spectral
