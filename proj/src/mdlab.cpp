#include "periscreen/mdlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "periscreen/errors.hpp"
#include "periscreen/gstat.hpp"
#include "periscreen/parallel.hpp"

namespace periscreen::mdlab {

double known_sigma_stat(std::span<const double> ordinates) {
  double mx = 0.0;
  for (double v : ordinates) mx = std::max(mx, v);
  return mx - std::log(static_cast<double>(ordinates.size()));
}

double studentized_stat(std::span<const double> ordinates) {
  const int q = static_cast<int>(ordinates.size());
  double mx = 0.0, sum = 0.0;
  for (double v : ordinates) {
    mx = std::max(mx, v);
    sum += v;
  }
  if (sum == 0.0)
    throw degenerate_input("studentized_stat: all ordinates are zero");
  return q * (mx / sum) - std::log(static_cast<double>(q));
}

namespace {

enum class NullStat { GRatio, KnownSigma, Studentized };

// Shared Monte Carlo core: `count` null statistics under `noise` at length n,
// in replicate order. Column b of batch t holds replicate 8*t+b; tail batches
// are zero-padded and the padding discarded, so the output never depends on
// the thread partition. A replicate whose ordinates are identically zero is
// redrawn from the substream mix64(seed, r, attempt), attempt = 1, 2, ...
std::vector<double> simulate_null_stats(rng::NoiseFamily noise, int n, long count,
                                        std::uint64_t seed, int threads,
                                        spectral::KernelKind kernel, NullStat kind,
                                        long* degenerate_resampled) {
  constexpr int kBatch = 8;
  const spectral::PeriodogramPlan plan(n, kernel);
  const int q = plan.q();
  std::vector<double> stats(count);
  std::atomic<long> resampled{0};
  const long batches = (count + kBatch - 1) / kBatch;

  parallel_chunks(batches, threads, [&](long first, long last) {
    std::vector<double> x(static_cast<std::size_t>(n) * kBatch);
    std::vector<double> ord(static_cast<std::size_t>(q) * kBatch);
    std::vector<double> one_x(n), one_ord(q);
    for (long t = first; t < last; ++t) {
      const long r0 = t * kBatch;
      const int width = static_cast<int>(std::min<long>(kBatch, count - r0));
      if (width < kBatch) std::fill(x.begin(), x.end(), 0.0);
      for (int b = 0; b < width; ++b) {
        rng::NoiseSampler sampler(noise, rng::mix64(seed, static_cast<std::uint64_t>(r0 + b), 0));
        for (int k = 0; k < n; ++k)
          x[static_cast<std::size_t>(k) * kBatch + b] = sampler();
      }
      plan.ordinates_batch(x.data(), kBatch, kBatch, ord.data());
      for (int b = 0; b < width; ++b) {
        double mx = 0.0, sum = 0.0;
        for (int j = 0; j < q; ++j) {
          const double v = ord[static_cast<std::size_t>(j) * kBatch + b];
          mx = std::max(mx, v);
          sum += v;
        }
        for (std::uint64_t attempt = 1; sum == 0.0; ++attempt) {
          if (attempt > 100)
            throw degenerate_input("simulate_null_stats: replicate stuck at zero energy");
          resampled.fetch_add(1, std::memory_order_relaxed);
          rng::NoiseSampler sampler(
              noise, rng::mix64(seed, static_cast<std::uint64_t>(r0 + b), attempt));
          sampler.fill(one_x);
          plan.ordinates(one_x, one_ord);
          mx = 0.0;
          sum = 0.0;
          for (double v : one_ord) {
            mx = std::max(mx, v);
            sum += v;
          }
        }
        double s = 0.0;
        switch (kind) {
          case NullStat::GRatio: s = mx / sum; break;
          case NullStat::KnownSigma: s = mx - std::log(static_cast<double>(q)); break;
          case NullStat::Studentized:
            s = q * (mx / sum) - std::log(static_cast<double>(q));
            break;
        }
        stats[r0 + b] = s;
      }
    }
  });

  if (degenerate_resampled) *degenerate_resampled = resampled.load();
  return stats;
}

void validate(const TailExperimentSpec& spec) {
  if (spec.n < 3) throw std::invalid_argument("TailExperimentSpec: need n >= 3");
  if (spec.replicates < 1000)
    throw std::invalid_argument("TailExperimentSpec: need replicates >= 1000");
  if (spec.y_grid.empty())
    throw std::invalid_argument("TailExperimentSpec: y_grid must be non-empty");
  const int q = (spec.n - 1) / 2;
  const double y_floor = -std::log(static_cast<double>(q));
  for (std::size_t i = 0; i < spec.y_grid.size(); ++i) {
    if (!std::isfinite(spec.y_grid[i]))
      throw std::invalid_argument("TailExperimentSpec: y_grid values must be finite");
    if (spec.y_grid[i] < y_floor - 1e-12)
      throw std::invalid_argument("TailExperimentSpec: y_grid must stay >= -log q");
    if (i > 0 && !(spec.y_grid[i] > spec.y_grid[i - 1]))
      throw std::invalid_argument("TailExperimentSpec: y_grid must be strictly increasing");
  }
}

}  // namespace

RatioCurve empirical_tail_ratio(const TailExperimentSpec& spec) {
  validate(spec);
  long resampled = 0;
  const NullStat kind = spec.mode == TailMode::KnownSigma ? NullStat::KnownSigma
                                                          : NullStat::Studentized;
  const std::vector<double> stats =
      simulate_null_stats(spec.noise, spec.n, spec.replicates, spec.seed, spec.threads,
                          spec.kernel, kind, &resampled);

  const int q = (spec.n - 1) / 2;
  const double logq = std::log(static_cast<double>(q));
  RatioCurve curve;
  curve.y_grid.assign(spec.y_grid.begin(), spec.y_grid.end());
  curve.replicates = spec.replicates;
  curve.degenerate_resampled = resampled;
  const double R = static_cast<double>(spec.replicates);
  for (double y : spec.y_grid) {
    long count = 0;
    for (double s : stats) count += (s >= y) ? 1 : 0;
    const double p = static_cast<double>(count) / R;
    const double ref = gstat::gumbel_tail(y);
    curve.empirical_tail.push_back(p);
    curve.reference_tail.push_back(ref);
    curve.ratio.push_back(p / ref);  // ref > 0 for every finite y
    curve.mc_stderr.push_back(std::sqrt(p * (1.0 - p) / R));
    curve.beyond_exact_range.push_back((y + logq) / q >= 1.0 ? 1 : 0);
  }
  return curve;
}

RatioCurve lemma31_curve(int n, std::span<const double> y_grid) {
  if (n < 5) throw std::invalid_argument("lemma31_curve: need n >= 5");
  const int q = (n - 1) / 2;
  const double logq = std::log(static_cast<double>(q));
  RatioCurve curve;
  curve.y_grid.assign(y_grid.begin(), y_grid.end());
  for (double y : y_grid) {
    if (!std::isfinite(y)) throw std::invalid_argument("lemma31_curve: y must be finite");
    const double x = (y + logq) / q;
    const double exact = gstat::fisher_exact_tail(x, q);
    const double ref = gstat::gumbel_tail(y);
    curve.empirical_tail.push_back(exact);
    curve.reference_tail.push_back(ref);
    curve.ratio.push_back(exact / ref);
    curve.mc_stderr.push_back(0.0);
    curve.beyond_exact_range.push_back(x >= 1.0 ? 1 : 0);
  }
  return curve;
}

std::vector<double> simulate_null_gstats(rng::NoiseFamily noise, int n, long replicates,
                                         std::uint64_t seed, int threads,
                                         spectral::KernelKind kernel,
                                         long* degenerate_resampled) {
  if (n < 3) throw std::invalid_argument("simulate_null_gstats: need n >= 3");
  if (replicates < 1) throw std::invalid_argument("simulate_null_gstats: need replicates >= 1");
  return simulate_null_stats(noise, n, replicates, seed, threads, kernel, NullStat::GRatio,
                             degenerate_resampled);
}

double CalibrationTable::survival_at(double g) const {
  const std::size_t m = survival.size();
  if (m < 2) throw std::logic_error("CalibrationTable: empty table");
  if (g <= g_lo) return 1.0;
  if (g >= g_hi) return survival.back();
  const double step = (g_hi - g_lo) / static_cast<double>(m - 1);
  const double pos = (g - g_lo) / step;
  const std::size_t i = std::min(static_cast<std::size_t>(pos), m - 2);
  const double frac = pos - static_cast<double>(i);
  return survival[i] + frac * (survival[i + 1] - survival[i]);
}

double CalibrationTable::rel_mc_error(double p) const {
  if (!(p > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt((1.0 - p) / (p * static_cast<double>(replicates)));
}

CalibrationTable calibrate_null_gstat(rng::NoiseFamily noise, int n, long replicates,
                                      std::uint64_t seed, int threads, int grid_points,
                                      spectral::KernelKind kernel) {
  if (replicates < 1000)
    throw std::invalid_argument("calibrate_null_gstat: need replicates >= 1000");
  if (grid_points < 2)
    throw std::invalid_argument("calibrate_null_gstat: need grid_points >= 2");
  std::vector<double> g = simulate_null_stats(noise, n, replicates, seed, threads, kernel,
                                              NullStat::GRatio, nullptr);
  std::sort(g.begin(), g.end());

  CalibrationTable table;
  table.n = n;
  table.q = (n - 1) / 2;
  table.replicates = replicates;
  table.g_lo = 1.0 / table.q;
  table.g_hi = 1.0;
  table.survival.resize(grid_points);
  const double R = static_cast<double>(replicates);
  for (int i = 0; i < grid_points; ++i) {
    const double x = table.g_lo + (table.g_hi - table.g_lo) * i / (grid_points - 1);
    const auto it = std::lower_bound(g.begin(), g.end(), x);  // first sample >= x
    table.survival[i] = static_cast<double>(g.end() - it) / R;
  }
  return table;
}

PvalueAccuracyResult pvalue_accuracy_experiment(rng::NoiseFamily noise, int n, int genes,
                                                double theta, long calibration_replicates,
                                                std::uint64_t seed, int threads,
                                                spectral::KernelKind kernel) {
  if (genes < 1) throw std::invalid_argument("pvalue_accuracy_experiment: need genes >= 1");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("pvalue_accuracy_experiment: theta must lie in (0,1)");
  const double scope_threshold = theta / (2.0 * genes);
  if (1.0 / static_cast<double>(calibration_replicates) > scope_threshold)
    throw resolution_error(
        "pvalue_accuracy_experiment: calibrated tail resolution 1/" +
        std::to_string(calibration_replicates) + " is coarser than theta/(2G) = " +
        std::to_string(scope_threshold) + "; raise calibration replicates or lower G");

  // Calibration and probe genes use disjoint substream tags on the same seed.
  const CalibrationTable table =
      calibrate_null_gstat(noise, n, calibration_replicates, seed, threads, 10000, kernel);
  const std::uint64_t probe_seed = rng::mix64(seed, 0x9e3779b97f4a7c15ULL, 1);

  const spectral::PeriodogramPlan plan(n, kernel);
  const int q = plan.q();
  std::vector<double> x(n), ord(q);

  PvalueAccuracyResult res;
  res.n = n;
  res.genes = genes;
  res.theta = theta;
  res.calibration_replicates = calibration_replicates;
  for (int gidx = 0; gidx < genes; ++gidx) {
    rng::NoiseSampler sampler(noise, rng::mix64(probe_seed, static_cast<std::uint64_t>(gidx), 0));
    sampler.fill(x);
    plan.ordinates(x, ord);
    const double g = gstat::g_statistic(std::span<const double>(ord)).g;
    const double p_exact = gstat::fisher_exact_tail(g, q);
    const double p_true = table.survival_at(g);
    if (p_exact <= scope_threshold && p_true <= scope_threshold) continue;
    ++res.genes_in_scope;
    const double err = p_true > 0.0 ? std::abs(p_exact / p_true - 1.0)
                                    : std::numeric_limits<double>::infinity();
    res.worst_rel_error = std::max(res.worst_rel_error, err);
    res.worst_calibration_rel_mc_error =
        std::max(res.worst_calibration_rel_mc_error, table.rel_mc_error(p_true));
  }
  return res;
}

}  // namespace periscreen::mdlab
