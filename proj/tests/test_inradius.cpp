#include "plank/errors.hpp"
#include "plank/inradius.hpp"
#include "plank/random.hpp"
#include "plank/search.hpp"

#include "doctest.h"

#include <cmath>

using namespace plank;

namespace {

ConvexBody cube(int d) { return ConvexBody::box(Vector::Constant(d, -0.5), Vector::Constant(d, 0.5)); }
ConvexBody disk() { return ConvexBody::ball(Vector::Zero(2), 1.0); }
ConvexBody triangle() {
  Matrix v(3, 2);
  v << -1, 0, 1, 0, 0, std::sqrt(3.0);
  return ConvexBody::vertices(v);
}
Direction dir(double x, double y) { return Direction::normalized(Vector{{x, y}}); }

ErrorCode codeOf(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("rounded width of a body relative to itself is one") {
  for (double rho : {0.1, 0.5, 0.9, 1.0}) CHECK(roundedRelativeWidth(cube(2), cube(2), rho) == doctest::Approx(1.0));
}

TEST_CASE("rounded width at the inradius equals the inradius") {
  const double r = cInradius(triangle(), disk()).scale;
  CHECK(roundedRelativeWidth(triangle(), disk(), r) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("rounded width of a rectangle against a centred square") {
  const ConvexBody rect = ConvexBody::box(Vector::Zero(2), Vector{{2.0, 1.0}});
  CHECK(roundedRelativeWidth(rect, cube(2), 0.25) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rounded width rejects radii outside (0, r]") {
  CHECK(codeOf([] { roundedRelativeWidth(cube(2), cube(2), 0.0); }) == ErrorCode::RhoOutOfRange);
  CHECK(codeOf([] { roundedRelativeWidth(cube(2), cube(2), 1.01); }) == ErrorCode::RhoOutOfRange);
}

TEST_CASE("successive inradii of a cube against itself are 1/m") {
  for (int d : {2, 3}) {
    for (int m : {1, 2, 3, 5}) {
      const SuccessiveInradiusResult r = successiveInradius(cube(d), cube(d), m, 1e-10);
      CHECK(std::abs(r.rho - 1.0 / m) <= 2e-10);
      CHECK(r.bracketLow <= r.rho);
      CHECK(r.rho <= r.bracketHigh);
      CHECK(r.residual <= (m + 1) * 1e-10 * cube(d).scale());
    }
  }
}

TEST_CASE("successive inradii of the triangle against the disk") {
  CHECK(successiveInradius(triangle(), disk(), 1).rho == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(successiveInradius(triangle(), disk(), 2).rho == doctest::Approx(std::sqrt(3.0) / 5).epsilon(1e-9));
}

TEST_CASE("first successive inradius is the C-inradius") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ConvexBody K = randomBody(trialSeed(3, s), 2, 8);
    const ConvexBody C = centeredGauge(randomBody(trialSeed(4, s), 2, 5));
    CHECK(std::abs(successiveInradius(K, C, 1).rho - cInradius(K, C).scale) <= 1e-9 * std::max(1.0, K.scale()));
  }
}

TEST_CASE("packing feasibility examples") {
  const ConvexBody sq = cube(2);
  const PackingCheck single = packingFeasible(triangle(), disk(), 1, 0.5, dir(0.3, 1));
  CHECK(single.feasible);
  REQUIRE(single.witness);
  CHECK(validatePacking(triangle(), disk(), *single.witness));

  const PackingCheck tight = packingFeasible(sq, sq, 2, 0.5, dir(1, 0));
  CHECK(tight.feasible);
  CHECK(std::abs(tight.slack) <= 1e-12);
  REQUIRE(tight.witness);
  CHECK(validatePacking(sq, sq, *tight.witness));
  CHECK(tight.witness->centers().size() == 2);

  CHECK_FALSE(packingFeasible(sq, sq, 2, 0.5 + 1e-6, dir(1, 0)).feasible);
  CHECK(codeOf([&] { packingFeasible(sq, sq, 2, 1.5, dir(1, 0)); }) == ErrorCode::RhoOutOfRange);
  CHECK(codeOf([&] { packingFeasible(sq, ConvexBody::box(Vector::Zero(2), Vector::Ones(2)), 2, 0.2, dir(1, 0)); }) ==
        ErrorCode::OriginNotInterior);
}

TEST_CASE("packing witnesses satisfy their invariants on random instances") {
  Rng rng(12);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ConvexBody K = randomBody(trialSeed(13, s), 2, 8);
    const ConvexBody C = centeredGauge(randomBody(trialSeed(14, s), 2, 5));
    const int m = 1 + static_cast<int>(rng.index(4));
    const double rho = successiveInradius(K, C, m).rho * 0.999;
    const PackingCheck p = packingFeasible(K, C, m, rho, Direction(rng.direction(2)));
    // Below r_C(K, m) every separating direction works.
    REQUIRE(p.feasible);
    REQUIRE(p.witness);
    CHECK(validatePacking(K, C, *p.witness));
    CHECK(p.witness->shifts.front() == 0.0);
    for (std::size_t k = 1; k < p.witness->shifts.size(); ++k) CHECK(p.witness->shifts[k] > p.witness->shifts[k - 1]);
  }
}

TEST_CASE("a packing that leaves the body fails validation") {
  const ConvexBody sq = cube(2);
  PackingCheck p = packingFeasible(sq, sq, 2, 0.4, dir(1, 0));
  REQUIRE(p.witness);
  LinearPacking bad = *p.witness;
  bad.base += Vector{{0.2, 0.0}};
  CHECK_FALSE(validatePacking(sq, sq, bad));
  LinearPacking crowded = *p.witness;
  crowded.shifts.back() *= 0.5;
  CHECK_FALSE(validatePacking(sq, sq, crowded));
}

TEST_CASE("packing characterization agrees with the fixed point") {
  CHECK(successiveInradiusViaPacking(cube(2), cube(2), 3).rho == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(std::abs(successiveInradiusViaPacking(triangle(), disk(), 2).rho - std::sqrt(3.0) / 5) <= 1e-5);
  CHECK(std::abs(successiveInradiusViaPacking(triangle(), disk(), 1).rho - 1 / std::sqrt(3.0)) <= 1e-6);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ConvexBody K = randomBody(trialSeed(15, s), 2, 7);
    const ConvexBody C = centeredGauge(randomBody(trialSeed(16, s), 2, 6));
    for (int m : {1, 2, 4}) {
      const double a = successiveInradius(K, C, m).rho;
      const double b = successiveInradiusViaPacking(K, C, m).rho;
      CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, a));
    }
  }
}

TEST_CASE("sequence examples") {
  for (const SequenceTerm& t : inradiusSequence(cube(2), cube(2), 6)) CHECK(t.scaled == doctest::Approx(1.0).epsilon(1e-9));
  const std::vector<SequenceTerm> seq = inradiusSequence(triangle(), disk(), 2);
  REQUIRE(seq.size() == 2);
  CHECK(seq[0].scaled == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(seq[1].scaled == doctest::Approx(2 * std::sqrt(3.0) / 5).epsilon(1e-9));
  CHECK(seq[1].scaled < std::sqrt(3.0) / 2);
}

TEST_CASE("scaled sequence is nondecreasing and bounded by the relative width") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const ConvexBody K = randomBody(trialSeed(17, s), 2, 8);
    const ConvexBody C = centeredGauge(randomBody(trialSeed(18, s), 2, 6));
    const WidthResult w = minimalRelativeWidth(K, C);
    const std::vector<SequenceTerm> seq = inradiusSequence(K, C, 10);
    CHECK(seq.front().rho == doctest::Approx(cInradius(K, C).scale).epsilon(1e-9));
    for (std::size_t i = 0; i < seq.size(); ++i) {
      CHECK(seq[i].scaled <= w.value + w.achievedTolerance);
      if (i) CHECK(seq[i].scaled >= seq[i - 1].scaled - 1e-8);
    }
  }
}

TEST_CASE("successive inradius is translation invariant and homogeneous") {
  Rng rng(19);
  for (std::uint64_t s = 0; s < 8; ++s) {
    const ConvexBody K = randomBody(trialSeed(20, s), 2, 7);
    const ConvexBody C = centeredGauge(randomBody(trialSeed(21, s), 2, 5));
    const double base = successiveInradius(K, C, 3).rho;
    CHECK(std::abs(successiveInradius(K.translated(rng.gaussianVector(2)), C, 3).rho - base) <= 2e-10 * K.scale() + 1e-9);
    CHECK(std::abs(successiveInradius(K, C.translated(0.05 * rng.gaussianVector(2)), 3).rho - base) <= 1e-8);
    CHECK(std::abs(successiveInradius(K.scaled(2.0), C, 3).rho - 2 * base) <= 1e-8);
  }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(successiveInradius(cube(2), cube(2), 0), Error);
  CHECK_THROWS_AS(successiveInradius(cube(2), cube(2), 2, 0.0), Error);
  CHECK_THROWS_AS(successiveInradius(cube(2), cube(3), 2), Error);
}
