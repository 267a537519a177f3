#pragma once

#include <random>
#include <vector>

#include "ndp/nn.hpp"
#include "ndp/rng.hpp"

namespace ndp::test {

inline Vec random_vec(Rng& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Vec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline Vec uniform_vec(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace ndp::test
