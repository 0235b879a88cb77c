#include "periscreen/rng.hpp"

#include <cmath>

namespace periscreen::rng {

std::string_view noise_family_name(NoiseFamily f) noexcept {
  switch (f) {
    case NoiseFamily::Normal01: return "normal";
    case NoiseFamily::ScaledT5: return "t5";
    case NoiseFamily::Exp1: return "exp1";
    case NoiseFamily::HalfChiSq2: return "chisq2";
    case NoiseFamily::HeavyT2_5: return "t2.5";
  }
  return "?";
}

double NoiseSampler::normal() noexcept {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Polar method: draws pairs, caches the second.
  double u, v, s;
  do {
    u = 2.0 * rng_.uniform01() - 1.0;
    v = 2.0 * rng_.uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

namespace {

// Marsaglia-Tsang squeeze sampler for Gamma(shape, 1), shape >= 1.
template <class NormalFn>
double gamma_ge1(Xoshiro256pp& rng, double shape, NormalFn&& std_normal) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = std_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double NoiseSampler::operator()() noexcept {
  switch (family_) {
    case NoiseFamily::Normal01:
      return normal();
    case NoiseFamily::ScaledT5: {
      // sqrt(3/5) * Z / sqrt(W/5), W ~ chi^2(5); unit variance.
      const double z = normal();
      double w = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double zi = normal();
        w += zi * zi;
      }
      return std::sqrt(3.0) * z / std::sqrt(w);
    }
    case NoiseFamily::Exp1:
      // Inverse CDF; -log1p(-u) is exact near u = 0 and finite for u in [0,1).
      return -std::log1p(-rng_.uniform01());
    case NoiseFamily::HalfChiSq2: {
      const double z1 = normal();
      const double z2 = normal();
      return 0.5 * (z1 * z1 + z2 * z2);
    }
    case NoiseFamily::HeavyT2_5: {
      // t(2.5)/sqrt(5): unit variance, infinite third absolute moment.
      const double z = normal();
      const double chi = 2.0 * gamma_ge1(rng_, 1.25, [this] { return normal(); });
      return z / std::sqrt(chi / 2.5) * std::sqrt(0.5 / 2.5);
    }
  }
  return 0.0;
}

}  // namespace periscreen::rng
