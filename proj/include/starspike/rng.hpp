#pragma once

#include <cmath>
#include <cstdint>

namespace starspike {

// Deterministic generator for the synth module. Distributions are built
// explicitly on top of the raw 64-bit stream (no std::*_distribution) so
// identical seeds give bit-identical draws on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {
    // warm up through the splitmix finaliser so nearby seeds decorrelate
    next_u64();
    next_u64();
  }

  uint64_t next_u64() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform_range(double lo, double hi) {
    return lo + (hi - lo) * uniform();
  }

  // Standard normal via Box-Muller (both values used, one cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  double exponential(double mean) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -mean * std::log(u);
  }

  double lognormal(double mu_log, double sigma_log) {
    return std::exp(normal(mu_log, sigma_log));
  }

  // Geometric on {1, 2, ...} with the given mean (success prob 1/mean).
  long geometric_ge1(double mean) {
    if (mean <= 1.0) return 1;
    const double p = 1.0 / mean;
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const long k = 1 + static_cast<long>(std::log(u) / std::log1p(-p));
    return k < 1 ? 1 : k;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Substream derivation: one master seed, fixed purpose/channel offsets, so
// adding draws to one stream never perturbs the others.
inline uint64_t substream_seed(uint64_t master, uint64_t purpose, uint64_t lane) {
  uint64_t z = master ^ (0x632be59bd9b4e019ULL * (purpose + 1)) ^
               (0x9e3779b97f4a7c15ULL * (lane + 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace starspike
