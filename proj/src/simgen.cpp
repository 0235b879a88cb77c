#include "periscreen/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "periscreen/parallel.hpp"

namespace periscreen::simgen {

void validate(const GeneModelSpec& m) {
  if (!std::isfinite(m.mu)) throw std::invalid_argument("GeneModelSpec: mu must be finite");
  if (!(m.beta >= 0.0) || !std::isfinite(m.beta))
    throw std::invalid_argument("GeneModelSpec: beta must be finite and >= 0");
  if (!(m.omega > 0.0 && m.omega < std::numbers::pi))
    throw std::invalid_argument("GeneModelSpec: omega must lie in (0, pi)");
  if (!(m.phi > -std::numbers::pi && m.phi <= std::numbers::pi))
    throw std::invalid_argument("GeneModelSpec: phi must lie in (-pi, pi]");
}

double signal_value(const GeneModelSpec& m, int t) {
  return m.mu + m.beta * std::cos(m.omega * t + m.phi);
}

namespace {

void validate(const CohortSpec& spec) {
  if (spec.genes < 1) throw std::invalid_argument("CohortSpec: need genes >= 1");
  if (spec.n < 3) throw std::invalid_argument("CohortSpec: need n >= 3");
  if (spec.periodic_count < 0 || spec.periodic_count > spec.genes)
    throw std::invalid_argument("CohortSpec: periodic_count must lie in [0, genes]");
  if (spec.periodic_count > 0 && spec.beta > 0.0) {
    GeneModelSpec probe{0.0, spec.beta, spec.omega, 0.0};
    simgen::validate(probe);
  }
}

}  // namespace

Cohort generate_cohort(const CohortSpec& spec) {
  validate(spec);
  Cohort c;
  c.genes = spec.genes;
  c.n = spec.n;
  c.periodic_count = spec.periodic_count;
  c.values.resize(static_cast<std::size_t>(spec.genes) * spec.n);
  c.is_periodic.assign(spec.genes, 0);
  for (int g = 0; g < spec.periodic_count; ++g) c.is_periodic[g] = 1;

  // cos(wt) + sin(wt) == sqrt(2) * cos(wt - pi/4); shared across periodic rows.
  std::vector<double> signal(spec.n, 0.0);
  if (spec.periodic_count > 0 && spec.beta > 0.0) {
    const GeneModelSpec m{0.0, spec.beta * std::numbers::sqrt2, spec.omega,
                          -std::numbers::pi / 4.0};
    for (int t = 1; t <= spec.n; ++t) signal[t - 1] = signal_value(m, t);
  }

  for (int g = 0; g < spec.genes; ++g) {
    double* row = c.values.data() + static_cast<std::size_t>(g) * spec.n;
    const bool periodic = g < spec.periodic_count;
    if (spec.zero_noise) {
      for (int t = 0; t < spec.n; ++t) row[t] = periodic ? signal[t] : 0.0;
      continue;
    }
    rng::NoiseSampler sampler(spec.noise, rng::mix64(spec.seed, static_cast<std::uint64_t>(g),
                                                     spec.replicate));
    if (periodic) {
      for (int t = 0; t < spec.n; ++t) row[t] = signal[t] + sampler();
    } else {
      sampler.fill({row, static_cast<std::size_t>(spec.n)});
    }
  }
  return c;
}

std::vector<double> cohort_pvalues(const Cohort& cohort, const spectral::PeriodogramPlan& plan,
                                   gstat::NullTailMethod method) {
  if (cohort.n != plan.n())
    throw std::invalid_argument("cohort_pvalues: plan length does not match cohort");
  const int n = cohort.n, q = plan.q(), G = cohort.genes;
  constexpr int kBatch = 8;
  std::vector<double> pv(G);
  std::vector<double> x(static_cast<std::size_t>(n) * kBatch);
  std::vector<double> ord(static_cast<std::size_t>(q) * kBatch);
  std::vector<double> one(q);
  for (int g0 = 0; g0 < G; g0 += kBatch) {
    const int width = std::min(kBatch, G - g0);
    // Zero-pad the tail batch; padded columns are computed and discarded.
    if (width < kBatch) std::fill(x.begin(), x.end(), 0.0);
    for (int b = 0; b < width; ++b) {
      const auto row = cohort.row(g0 + b);
      for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k) * kBatch + b] = row[k];
    }
    plan.ordinates_batch(x.data(), kBatch, kBatch, ord.data());
    for (int b = 0; b < width; ++b) {
      for (int j = 0; j < q; ++j) one[j] = ord[static_cast<std::size_t>(j) * kBatch + b];
      const auto t = gstat::g_test(std::span<const double>(one));
      pv[g0 + b] = method == gstat::NullTailMethod::FisherExact ? t.p_exact : t.p_gumbel;
    }
  }
  return pv;
}

ReplicateMetrics table1_metrics(const fdr::BhDecision& decision,
                                std::span<const std::uint8_t> truth,
                                std::span<const double> pvalues, int top_k) {
  const int G = static_cast<int>(pvalues.size());
  if (static_cast<int>(truth.size()) != G || decision.total != G)
    throw std::invalid_argument("table1_metrics: truth/pvalues/decision sizes differ");
  if (top_k < 1) throw std::invalid_argument("table1_metrics: top_k must be >= 1");

  ReplicateMetrics m;
  m.tot = static_cast<int>(decision.rejected.size());
  for (int i : decision.rejected) m.pos += truth[i] ? 1 : 0;
  m.fdp = static_cast<double>(m.tot - m.pos) / std::max(m.tot, 1);

  const int k = std::min(top_k, G);
  std::vector<int> order(G);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
    return pvalues[a] != pvalues[b] ? pvalues[a] < pvalues[b] : a < b;
  });
  for (int i = 0; i < k; ++i) m.z += truth[order[i]] ? 1 : 0;
  return m;
}

MetricSummary summarize_metrics(std::span<const ReplicateMetrics> m) {
  MetricSummary s;
  s.replicates = static_cast<int>(m.size());
  if (m.empty()) return s;
  const double R = static_cast<double>(m.size());
  for (const auto& r : m) {
    s.tot += r.tot;
    s.pos += r.pos;
    s.efdr += r.fdp;
    s.z += r.z;
  }
  s.tot /= R;
  s.pos /= R;
  s.efdr /= R;
  s.z /= R;
  if (m.size() > 1) {
    double vt = 0, vp = 0, vf = 0, vz = 0;
    for (const auto& r : m) {
      vt += (r.tot - s.tot) * (r.tot - s.tot);
      vp += (r.pos - s.pos) * (r.pos - s.pos);
      vf += (r.fdp - s.efdr) * (r.fdp - s.efdr);
      vz += (r.z - s.z) * (r.z - s.z);
    }
    const double denom = R * (R - 1.0);
    s.tot_se = std::sqrt(vt / denom);
    s.pos_se = std::sqrt(vp / denom);
    s.efdr_se = std::sqrt(vf / denom);
    s.z_se = std::sqrt(vz / denom);
  }
  return s;
}

SimulateResult run_simulation(const SimulateSpec& spec) {
  if (spec.replicates < 1) throw std::invalid_argument("run_simulation: need replicates >= 1");
  if (spec.thetas.empty()) throw std::invalid_argument("run_simulation: need at least one theta");
  for (double th : spec.thetas)
    if (!(th > 0.0 && th < 1.0))
      throw std::invalid_argument("run_simulation: theta must lie in (0,1)");
  validate(spec.cohort);

  const spectral::PeriodogramPlan plan(spec.cohort.n, spec.kernel);
  const int T = static_cast<int>(spec.thetas.size());
  SimulateResult res;
  res.per_theta.assign(T, std::vector<ReplicateMetrics>(spec.replicates));

  parallel_chunks(spec.replicates, spec.threads, [&](long first, long last) {
    for (long r = first; r < last; ++r) {
      CohortSpec cs = spec.cohort;
      cs.replicate = static_cast<std::uint64_t>(r);
      const Cohort cohort = generate_cohort(cs);
      const std::vector<double> pv = cohort_pvalues(cohort, plan, spec.method);
      for (int t = 0; t < T; ++t) {
        const auto decision = fdr::bh_select(std::span<const double>(pv), spec.thetas[t]);
        res.per_theta[t][r] = table1_metrics(decision, cohort.is_periodic, pv, spec.top_k);
      }
    }
  });

  res.summaries.reserve(T);
  for (int t = 0; t < T; ++t)
    res.summaries.push_back(summarize_metrics(res.per_theta[t]));
  return res;
}

}  // namespace periscreen::simgen
