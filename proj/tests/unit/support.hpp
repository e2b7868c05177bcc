#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace axitherm::test {

// Small seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1p-53); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace axitherm::test
