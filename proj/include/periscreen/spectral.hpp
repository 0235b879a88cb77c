#pragma once

#include <complex>
#include <span>

#include "periscreen/kernels.hpp"
#include "periscreen/series.hpp"

namespace periscreen::spectral {

// Reusable machinery for one series length: frequency grid + trig table +
// resolved kernel. Build once, evaluate many series.
class PeriodogramPlan {
 public:
  explicit PeriodogramPlan(int n, KernelKind kind = KernelKind::Auto);

  int n() const noexcept { return grid_.n; }
  int q() const noexcept { return grid_.q; }
  const FrequencyGrid& grid() const noexcept { return grid_; }
  const TrigTable& table() const noexcept { return table_; }
  KernelKind kernel() const noexcept { return kind_; }

  // Ordinates at the interior grid, j = 1..q. out.size() must equal q.
  void ordinates(std::span<const double> x, std::span<double> out) const;

  // Ordinates at the full grid, j = 1..n (j = n is the DC term n*mean^2);
  // used by the Parseval diagnostics. out.size() must equal n.
  void ordinates_full(std::span<const double> x, std::span<double> out) const;

  // Interleaved batch: x[(k-1)*stride+b], out[(j-1)*stride+b], j = 1..q.
  void ordinates_batch(const double* x, int stride, int width, double* out) const;

 private:
  FrequencyGrid grid_;
  TrigTable table_;
  KernelKind kind_;
};

// One-shot convenience over a fresh plan.
Periodogram periodogram(const SeriesSample& s, KernelKind kind = KernelKind::Auto);

// Discrete-time transform S(omega) = sum_{k=1..n} X_k e^{i k omega} at one
// frequency. On-grid omega (within 1e-9 of some 2*pi*j/n) is routed through
// the exact mod-n table walk; anything else uses additive phase accumulation
// with wrap-around, never k*omega directly (which loses precision for large k).
std::complex<double> dft_at_frequency(const SeriesSample& s, double omega);

}  // namespace periscreen::spectral
