#pragma once

#include "plank/types.hpp"

#include <cstdint>
#include <random>

namespace plank {

/// splitmix64 finalizer; spreads nearby seeds over the whole 64-bit range.
std::uint64_t mixSeed(std::uint64_t x);

/// Seed of trial `index` under `master`. Depends only on the pair, so results
/// do not depend on which thread runs the trial.
std::uint64_t trialSeed(std::uint64_t master, std::uint64_t index);

/// Seeded generator whose derived distributions are spelled out here rather
/// than taken from <random>, whose distribution algorithms vary between
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mixSeed(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n - 1}.
  int index(int n);
  /// Standard normal (Box-Muller).
  double gaussian();
  Vector gaussianVector(int dim);
  /// Uniform on the unit sphere.
  Vector direction(int dim);
  /// Uniform in the unit ball.
  Vector inBall(int dim);

 private:
  std::mt19937_64 engine_;
  bool hasSpare_ = false;
  double spare_ = 0.0;
};

}  // namespace plank
