#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "periscreen/rng.hpp"
#include "periscreen/spectral.hpp"

namespace periscreen::mdlab {

// Which maximum is studied: the raw max ordinate against the known unit noise
// variance, or the self-normalized max-over-mean (q*g). Both are centered by
// log q, so their tails share the same double-exponential reference.
enum class TailMode { KnownSigma, Studentized };

struct TailExperimentSpec {
  int n = 512;
  rng::NoiseFamily noise = rng::NoiseFamily::Normal01;
  TailMode mode = TailMode::Studentized;
  std::vector<double> y_grid;  // strictly increasing, within [-log q, inf)
  long replicates = 100000;    // >= 1000
  std::uint64_t seed = 0;
  int threads = 1;
  spectral::KernelKind kernel = spectral::KernelKind::Auto;
};

struct RatioCurve {
  std::vector<double> y_grid;
  std::vector<double> empirical_tail;   // in [0,1]
  std::vector<double> reference_tail;   // the comparison tail (double-exponential, or exact)
  std::vector<double> ratio;            // empirical / reference
  std::vector<double> mc_stderr;        // sqrt(p(1-p)/replicates); 0 if deterministic
  // Grid points where the centered argument (y+log q)/q reaches 1, i.e. the
  // exact survival series is pinned at 0. In-memory annotation only; the
  // serialized curve keeps the fixed five columns.
  std::vector<std::uint8_t> beyond_exact_range;
  long replicates = 0;             // 0 for deterministic curves
  long degenerate_resampled = 0;   // replicates redrawn due to all-zero series
};

// Statistic helpers, shared with tests. On the same ordinates,
// known_sigma - studentized == max*(1 - q/sum) exactly in real arithmetic.
double known_sigma_stat(std::span<const double> ordinates);  // max I - log q
double studentized_stat(std::span<const double> ordinates);  // q*g - log q

// Monte Carlo tail of the chosen statistic against the double-exponential
// reference. Replicate r draws from the substream mix64(seed, r, attempt);
// exceedance counts are accumulated in replicate order, so the curve is
// bit-identical for any thread count.
RatioCurve empirical_tail_ratio(const TailExperimentSpec& spec);

// Deterministic companion: ratio of the exact null tail, evaluated at the
// centered argument (y + log q)/q, to the double-exponential tail. No
// randomness; mc_stderr is all zeros. Requires n >= 5.
RatioCurve lemma31_curve(int n, std::span<const double> y_grid);

// Raw null g statistics (max/sum) in replicate order; the building block for
// custom tail comparisons (the null-oracle check derives both the studentized
// statistic q*g - log q and the exact p-value from these).
std::vector<double> simulate_null_gstats(rng::NoiseFamily noise, int n, long replicates,
                                         std::uint64_t seed, int threads = 1,
                                         spectral::KernelKind kernel = spectral::KernelKind::Auto,
                                         long* degenerate_resampled = nullptr);

// Tabulated empirical survival function of the null g statistic under a given
// noise family: P(g >= x) on a uniform grid over [1/q, 1], linearly
// interpolated between grid points.
struct CalibrationTable {
  int n = 0;
  int q = 0;
  long replicates = 0;
  double g_lo = 0.0, g_hi = 1.0;
  std::vector<double> survival;

  double survival_at(double g) const;
  // Relative MC error of a tail estimate p from this table's sample size.
  double rel_mc_error(double p) const;
};

CalibrationTable calibrate_null_gstat(rng::NoiseFamily noise, int n, long replicates,
                                      std::uint64_t seed, int threads = 1,
                                      int grid_points = 10000,
                                      spectral::KernelKind kernel = spectral::KernelKind::Auto);

struct PvalueAccuracyResult {
  int n = 0;
  int genes = 0;
  double theta = 0.0;
  long calibration_replicates = 0;
  long genes_in_scope = 0;         // genes where either p-value exceeds theta/(2G)
  double worst_rel_error = 0.0;    // max |p_exact/p_true - 1| over in-scope genes
  double worst_calibration_rel_mc_error = 0.0;
};

// How wrong is the Gaussian-exact p-value under non-Gaussian noise? Calibrates
// P_true by MC, then screens `genes` fresh null genes and compares p_exact
// against the calibrated tail on the scope set {either p > theta/(2*genes)}.
// Throws resolution_error when 1/calibration_replicates > theta/(2*genes).
PvalueAccuracyResult pvalue_accuracy_experiment(
    rng::NoiseFamily noise, int n, int genes, double theta, long calibration_replicates,
    std::uint64_t seed, int threads = 1,
    spectral::KernelKind kernel = spectral::KernelKind::Auto);

}  // namespace periscreen::mdlab
