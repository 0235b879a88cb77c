#pragma once

#include <span>
#include <vector>

namespace periscreen::spectral {

// Standard (Fourier) frequencies 2*pi*j/n for j = 1..q, q = floor((n-1)/2):
// the frequencies strictly inside (0, pi). omega[j-1] holds frequency index j.
struct FrequencyGrid {
  int n = 0;
  int q = 0;
  std::vector<double> omega;
};

// Throws std::invalid_argument unless n >= 3 (the smallest n with q >= 1).
FrequencyGrid fourier_grid(int n);

// A validated equally-spaced sample X_1..X_n. Construction rejects n < 3 and
// non-finite values; constant series are accepted here and only rejected where
// a g statistic is required.
class SeriesSample {
 public:
  explicit SeriesSample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

 private:
  std::vector<double> values_;
};

struct Periodogram {
  FrequencyGrid grid;
  std::vector<double> ordinates;  // ordinates[j-1] = I_n(2*pi*j/n), j = 1..q
};

// Mean ordinate over the grid; the denominator of the studentized maximum.
double periodogram_mean(const Periodogram& pg);

}  // namespace periscreen::spectral
