#include "periscreen/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "periscreen/errors.hpp"

namespace periscreen::spectral {

FrequencyGrid fourier_grid(int n) {
  if (n < 3)
    throw std::invalid_argument("fourier_grid: need n >= 3, got " + std::to_string(n));
  FrequencyGrid g;
  g.n = n;
  g.q = (n - 1) / 2;
  g.omega.resize(g.q);
  for (int j = 1; j <= g.q; ++j) g.omega[j - 1] = 2.0 * std::numbers::pi * j / n;
  return g;
}

SeriesSample::SeriesSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 3)
    throw std::invalid_argument("SeriesSample: need at least 3 observations, got " +
                                std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw std::invalid_argument("SeriesSample: non-finite value at position " +
                                  std::to_string(i + 1));
}

double periodogram_mean(const Periodogram& pg) {
  if (pg.ordinates.size() != static_cast<std::size_t>(pg.grid.q))
    throw std::invalid_argument("periodogram_mean: ordinate count does not match grid");
  double acc = 0.0;
  for (double v : pg.ordinates) acc += v;
  return acc / pg.grid.q;
}

PeriodogramPlan::PeriodogramPlan(int n, KernelKind kind)
    : grid_(fourier_grid(n)), table_(n), kind_(resolve_kernel(kind)) {}

void PeriodogramPlan::ordinates(std::span<const double> x, std::span<double> out) const {
  if (static_cast<int>(x.size()) != n())
    throw std::invalid_argument("PeriodogramPlan::ordinates: series length mismatch");
  if (static_cast<int>(out.size()) != q())
    throw std::invalid_argument("PeriodogramPlan::ordinates: output size must be q");
  batch_ordinates(table_, kind_, x.data(), 1, 1, q(), out.data());
}

void PeriodogramPlan::ordinates_full(std::span<const double> x, std::span<double> out) const {
  if (static_cast<int>(x.size()) != n())
    throw std::invalid_argument("PeriodogramPlan::ordinates_full: series length mismatch");
  if (static_cast<int>(out.size()) != n())
    throw std::invalid_argument("PeriodogramPlan::ordinates_full: output size must be n");
  batch_ordinates(table_, kind_, x.data(), 1, 1, n(), out.data());
}

void PeriodogramPlan::ordinates_batch(const double* x, int stride, int width,
                                      double* out) const {
  batch_ordinates(table_, kind_, x, stride, width, q(), out);
}

Periodogram periodogram(const SeriesSample& s, KernelKind kind) {
  PeriodogramPlan plan(s.size(), kind);
  Periodogram pg;
  pg.grid = plan.grid();
  pg.ordinates.resize(plan.q());
  plan.ordinates(s.values(), pg.ordinates);
  return pg;
}

std::complex<double> dft_at_frequency(const SeriesSample& s, double omega) {
  if (!std::isfinite(omega))
    throw std::invalid_argument("dft_at_frequency: omega must be finite");
  const int n = s.size();
  const auto x = s.values();
  constexpr double two_pi = 2.0 * std::numbers::pi;

  // Snap to the exact grid path when omega is (numerically) 2*pi*j/n.
  const double jr = omega * n / two_pi;
  const double jround = std::nearbyint(jr);
  if (std::abs(jr - jround) <= 1e-9 * std::max(1.0, std::abs(jr)) &&
      std::abs(jround) < 9.0e15) {
    const long long j = static_cast<long long>(jround);
    const int jm = static_cast<int>(((j % n) + n) % n);
    TrigTable t(n);
    const double* cv = t.cosv();
    const double* sv = t.sinv();
    double re = 0.0, im = 0.0;
    int idx = 0;
    for (int k = 0; k < n; ++k) {
      idx += jm;
      if (idx >= n) idx -= n;
      re += x[k] * cv[idx];
      im += x[k] * sv[idx];
    }
    return {re, im};
  }

  // Off-grid: accumulate the phase additively and wrap to [0, 2*pi).
  double step = std::fmod(omega, two_pi);
  if (step < 0.0) step += two_pi;
  double phase = 0.0;
  double re = 0.0, im = 0.0;
  for (int k = 0; k < n; ++k) {
    phase += step;
    if (phase >= two_pi) phase -= two_pi;
    re += x[k] * std::cos(phase);
    im += x[k] * std::sin(phase);
  }
  return {re, im};
}

}  // namespace periscreen::spectral
