#pragma once

#include <random>

#include "plasticwalk/types.hpp"

namespace test {

inline plasticwalk::SpinorField random_field(std::size_t n, double dx, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  plasticwalk::SpinorField f(n, dx);
  for (auto& s : f.sites()) s = {{g(rng), g(rng)}, {g(rng), g(rng)}};
  f *= 1.0 / f.norm();
  return f;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace test
