#include "plank/random.hpp"

#include <cmath>
#include <numbers>

namespace plank {

std::uint64_t mixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trialSeed(std::uint64_t master, std::uint64_t index) {
  return mixSeed(mixSeed(master) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::index(int n) {
  if (n <= 1) return 0;
  return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
}

double Rng::gaussian() {
  if (hasSpare_) {
    hasSpare_ = false;
    return spare_;
  }
  double u = 0.0;
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  spare_ = r * std::sin(2.0 * std::numbers::pi * v);
  hasSpare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * v);
}

Vector Rng::gaussianVector(int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = gaussian();
  return v;
}

Vector Rng::direction(int dim) {
  for (;;) {
    Vector v = gaussianVector(dim);
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

Vector Rng::inBall(int dim) {
  return direction(dim) * std::pow(uniform(), 1.0 / dim);
}

}  // namespace plank
