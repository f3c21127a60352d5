#include "plank/errors.hpp"
#include "plank/lp.hpp"

#include "doctest.h"

using namespace plank;

namespace {
Matrix unitBoxRows() {
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  return A;
}
}  // namespace

TEST_CASE("box optimum sits at the matching corner") {
  const Vector b = Vector::Ones(4);
  const LpResult r = maximize(unitBoxRows(), b, Vector{{1.0, 2.0}});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("infeasible and unbounded programs are reported") {
  Matrix A(2, 2);
  A << 1, 0, -1, 0;
  CHECK(maximize(A, Vector{{-1.0, -1.0}}, Vector{{1.0, 0.0}}).status == LpStatus::Infeasible);
  CHECK(maximize(A, Vector{{1.0, 1.0}}, Vector{{0.0, 1.0}}).status == LpStatus::Unbounded);
}

TEST_CASE("triangle program matches the hand solution") {
  // x >= 0, y >= 0, x + 2y <= 4, 3x + y <= 6; max x + y at (8/5, 6/5).
  Matrix A(4, 2);
  A << -1, 0, 0, -1, 1, 2, 3, 1;
  const LpResult r = maximize(A, Vector{{0.0, 0.0, 4.0, 6.0}}, Vector{{1.0, 1.0}});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(2.8).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(1.6));
}

TEST_CASE("same seed gives bitwise identical solutions") {
  Matrix A(6, 3);
  A << 1, 0.3, 0, -1, 0, 0.2, 0, 1, 0, 0, -1, 0.1, 0.2, 0, 1, 0, 0, -1;
  const Vector b = Vector::Ones(6);
  const Vector c{{0.3, 0.5, 0.7}};
  const LpResult a = maximize(A, b, c);
  const LpResult again = maximize(A, b, c);
  CHECK(a.x == again.x);
  CHECK(a.value == again.value);
}

TEST_CASE("Chebyshev ball of the unit square") {
  const ChebyshevBall cb = chebyshevBall(unitBoxRows(), Vector::Ones(4));
  CHECK(cb.radius == doctest::Approx(1.0));
  CHECK(cb.center.norm() == doctest::Approx(0.0).epsilon(1e-9));
  Matrix A(2, 2);
  A << 1, 0, -1, 0;
  CHECK(chebyshevBall(A, Vector{{-1.0, 0.0}}).radius < 0);
}
