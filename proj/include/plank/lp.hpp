#pragma once

#include "plank/types.hpp"

#include <cstdint>

namespace plank {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  double value = 0.0;
};

struct LpOptions {
  // Half side of the bounding box |x_j| <= box that keeps every subproblem
  // bounded. Zero selects 1e6 * max(1, max|b|).
  double box = 0.0;
  // Relative feasibility slack on normalized rows.
  double tolerance = 1e-10;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

// maximize <c, x> subject to A x <= b.
//
// Seidel's randomized incremental algorithm: constraints are inserted in a
// seeded random order; whenever the current optimum violates the new
// constraint the problem is restricted to its boundary hyperplane by
// eliminating one variable and solved recursively. Deterministic for a fixed
// seed. Expected cost O(d! m), intended for d <= 10.
LpResult maximize(const Matrix& A, const Vector& b, const Vector& c, const LpOptions& options = {});

// Radius and center of the largest Euclidean ball inside {x : A x <= b}.
// Negative radius means the system is infeasible.
struct ChebyshevBall {
  double radius;
  Vector center;
};
ChebyshevBall chebyshevBall(const Matrix& A, const Vector& b, const LpOptions& options = {});

}  // namespace plank
