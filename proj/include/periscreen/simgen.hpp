#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "periscreen/fdr.hpp"
#include "periscreen/gstat.hpp"
#include "periscreen/rng.hpp"
#include "periscreen/spectral.hpp"

namespace periscreen::simgen {

using rng::NoiseFamily;

// One gene's deterministic component: mu + beta*cos(omega*t + phi), t = 1..n.
struct GeneModelSpec {
  double mu = 0.0;
  double beta = 0.0;   // >= 0
  double omega = 0.0;  // in (0, pi)
  double phi = 0.0;    // in (-pi, pi]
};

void validate(const GeneModelSpec& m);  // throws std::invalid_argument
double signal_value(const GeneModelSpec& m, int t);

struct CohortSpec {
  int genes = 2000;
  int n = 50;
  int periodic_count = 100;
  double beta = 1.0;
  double omega = 0.6283185307179586;  // 2*pi/10
  NoiseFamily noise = NoiseFamily::Normal01;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;  // enters the per-gene substream derivation
  bool zero_noise = false;      // test hook: noise identically 0
};

struct Cohort {
  int genes = 0;
  int n = 0;
  int periodic_count = 0;
  std::vector<double> values;              // row-major genes x n
  std::vector<std::uint8_t> is_periodic;   // ground truth flags

  std::span<const double> row(int g) const {
    return {values.data() + static_cast<std::size_t>(g) * n, static_cast<std::size_t>(n)};
  }
};

// Rows 1..periodic_count carry beta*(cos(omega*t) + sin(omega*t)) plus noise,
// the rest are pure noise. Gene g of replicate r draws from the substream
// keyed by mix64(seed, g, r), so cohorts are pure functions of their spec and
// extending `genes` never changes existing rows.
Cohort generate_cohort(const CohortSpec& spec);

// p-value per gene under the chosen null tail, batch-evaluated. Propagates
// degenerate_input (cannot occur for continuous noise with zero_noise off).
std::vector<double> cohort_pvalues(const Cohort& cohort, const spectral::PeriodogramPlan& plan,
                                   gstat::NullTailMethod method);

// Per-replicate screening metrics.
struct ReplicateMetrics {
  int tot = 0;     // rejections
  int pos = 0;     // true positives among rejections
  double fdp = 0;  // (tot-pos)/max(tot,1)
  int z = 0;       // true periodic genes among the top_k smallest p-values
};

ReplicateMetrics table1_metrics(const fdr::BhDecision& decision,
                                std::span<const std::uint8_t> truth,
                                std::span<const double> pvalues, int top_k = 100);

struct MetricSummary {
  double tot = 0, pos = 0, efdr = 0, z = 0;          // means over replicates
  double tot_se = 0, pos_se = 0, efdr_se = 0, z_se = 0;
  int replicates = 0;
};

MetricSummary summarize_metrics(std::span<const ReplicateMetrics> m);

struct SimulateSpec {
  CohortSpec cohort;
  std::vector<double> thetas = {0.05};
  int replicates = 100;
  int top_k = 100;
  gstat::NullTailMethod method = gstat::NullTailMethod::FisherExact;
  int threads = 1;
  spectral::KernelKind kernel = spectral::KernelKind::Auto;
};

struct SimulateResult {
  // per_theta[t][r] is the metric set of replicate r at thetas[t]; the z
  // column does not depend on theta.
  std::vector<std::vector<ReplicateMetrics>> per_theta;
  std::vector<MetricSummary> summaries;  // parallel to thetas
};

SimulateResult run_simulation(const SimulateSpec& spec);

}  // namespace periscreen::simgen
