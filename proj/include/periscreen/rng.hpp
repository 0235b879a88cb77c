#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace periscreen::rng {

// SplitMix64 step. Used for seeding and for deriving substream keys; never as
// the simulation engine itself.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Collision-resistant mix of (seed, a, b) into one 64-bit substream key.
// Three chained splitmix steps: each argument perturbs the state before the
// next step, so (seed, a, b) and (seed, b, a) land far apart.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= a;
  h ^= splitmix64(s);
  s ^= b + 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  return h;
}

// xoshiro256++ (Blackman & Vigna). Small, fast, passes BigCrush; the state is
// seeded by splitmix64 expansion so any 64-bit seed (including 0) is fine.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_;
};

// Variance-one noise families used throughout the simulations.
enum class NoiseFamily {
  Normal01,    // N(0,1)
  ScaledT5,    // sqrt(3/5) * t(5)            (Var t(5) = 5/3)
  Exp1,        // Exp(1), mean 1, variance 1  (not centered)
  HalfChiSq2,  // chi^2(2)/2, mean 1, variance 1
  HeavyT2_5,   // t(2.5)/sqrt(5)              (Var t(2.5) = 5; infinite 3rd abs moment regime)
};

std::string_view noise_family_name(NoiseFamily f) noexcept;

// One independent stream of draws from a fixed family. Deterministic given
// (family, key); the cached Box-Muller spare lives per sampler, so streams
// never share hidden state.
class NoiseSampler {
 public:
  NoiseSampler(NoiseFamily family, std::uint64_t key) noexcept
      : family_(family), rng_(key) {}

  double operator()() noexcept;
  void fill(std::span<double> out) noexcept {
    for (auto& v : out) v = (*this)();
  }
  NoiseFamily family() const noexcept { return family_; }

 private:
  double normal() noexcept;  // polar Box-Muller with spare caching

  NoiseFamily family_;
  Xoshiro256pp rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace periscreen::rng
