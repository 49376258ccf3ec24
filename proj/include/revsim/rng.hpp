#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace revsim {

// Seeded generator with a logical draw counter. Every variate below consumes
// a fixed number of engine steps, so streams are reproducible and draw
// accounting is exact.
class RunRng {
 public:
  explicit RunRng(std::uint64_t seed) : gen_(seed) {}

  // One engine step, uniform in [0,1).
  double uniform() {
    ++draws_;
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inverse-CDF; one draw.
  double exponential(double mean) {
    double u = uniform();
    return -mean * std::log1p(-u);
  }

  // Box-Muller without caching; two draws per variate.
  double normal(double mu, double sigma) {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * r * std::cos(6.283185307179586 * u2);
  }

  double lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

  // Index into a cumulative-weight walk; one draw.
  std::size_t pick_weighted(const std::vector<double>& weights, double total) {
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;
  }

  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 gen_;
  std::uint64_t draws_ = 0;
};

}  // namespace revsim
