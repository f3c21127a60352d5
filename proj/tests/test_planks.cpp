#include "plank/errors.hpp"
#include "plank/geometry.hpp"
#include "plank/planks.hpp"
#include "plank/random.hpp"
#include "plank/search.hpp"

#include "doctest.h"

#include <cmath>

using namespace plank;

namespace {

ConvexBody unitSquare() { return ConvexBody::box(Vector::Zero(2), Vector::Ones(2)); }
ConvexBody disk() { return ConvexBody::ball(Vector::Zero(2), 1.0); }
Direction dir(double x, double y) { return Direction::normalized(Vector{{x, y}}); }
Plank xSlab(double lo, double hi) { return Plank(dir(1, 0), lo, hi); }
Plank ySlab(double lo, double hi) { return Plank(dir(0, 1), lo, hi); }

CoverageOptions mode(CoverageOptions::Mode m) {
  CoverageOptions o;
  o.mode = m;
  return o;
}

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

TEST_CASE("relative plank widths") {
  CHECK(plankRelativeWidth(xSlab(0, 0.3), unitSquare()) == doctest::Approx(0.3));
  CHECK(plankRelativeWidth(xSlab(0, 0.3), disk()) == doctest::Approx(0.15));
  CHECK(plankRelativeWidth(xSlab(0.2, 0.2), disk()) == 0.0);
}

TEST_CASE("relative width scales inversely with C") {
  Rng rng(50);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ConvexBody C = randomBody(trialSeed(51, s), 2, 6);
    const Plank P(Direction(rng.direction(2)), -0.2, 0.4);
    for (double lambda : {0.5, 2.0, 3.0})
      CHECK(std::abs(plankRelativeWidth(P, C.scaled(lambda)) - plankRelativeWidth(P, C) / lambda) <=
            1e-12 * plankRelativeWidth(P, C));
    const Vector t = rng.gaussianVector(2);
    const double shift = P.normal().dot(t);
    CHECK(plankRelativeWidth(Plank(P.normal(), P.low() + shift, P.high() + shift), C.translated(t)) ==
          doctest::Approx(plankRelativeWidth(P, C)).epsilon(1e-12));
  }
}

TEST_CASE("thickening a line by the disk") {
  const Plank p = thickenHyperplane({dir(1, 0), 0.0}, disk(), 0.5);
  CHECK(p.low() == doctest::Approx(-0.5));
  CHECK(p.high() == doctest::Approx(0.5));
  CHECK(plankRelativeWidth(p, disk()) == doctest::Approx(0.5));
  const Plank zero = thickenHyperplane({dir(1, 0), 0.3}, disk(), 0.0);
  CHECK(zero.width() == 0.0);
}

TEST_CASE("thickening by an asymmetric gauge keeps its C-width") {
  Matrix v(3, 2);
  v << -1, -1, 2, -1, -1, 2;
  const ConvexBody C = ConvexBody::vertices(v);
  Rng rng(52);
  for (int k = 0; k < 20; ++k) {
    const Hyperplane H{Direction(rng.direction(2)), rng.uniform(-1, 1)};
    const double s = rng.uniform(0.01, 2.0);
    const Plank p = thickenHyperplane(H, C, s);
    CHECK(std::abs(plankRelativeWidth(p, C) - s) <= 1e-12 * std::max(1.0, s));
    CHECK(p.low() < H.offset);
    CHECK(H.offset < p.high());
  }
  const Plank p = thickenHyperplane({dir(1, 0), 0.0}, C, 1.0);
  // h_C(e1) = 2 and h_C(-e1) = 1.
  CHECK(p.low() == doctest::Approx(-2.0));
  CHECK(p.high() == doctest::Approx(1.0));
  CHECK(codeOf([] { thickenHyperplane({dir(1, 0), 0.0}, unitSquare(), 0.5); }) == ErrorCode::OriginNotInterior);
  CHECK_THROWS_AS(thickenHyperplane({dir(1, 0), 0.0}, disk(), -1.0), Error);
}

TEST_CASE("coverage examples") {
  const ConvexBody K = unitSquare();
  const CoverageVerdict halves = coversBody(K, {xSlab(0, 0.5), xSlab(0.5, 1)});
  CHECK(halves.covered);
  CHECK(halves.certified);
  CHECK(halves.method == CoverageMethod::CellEnumeration);
  CHECK_FALSE(halves.witness);

  const CoverageVerdict gap = coversBody(K, {xSlab(0, 0.4), xSlab(0.6, 1)});
  CHECK_FALSE(gap.covered);
  REQUIRE(gap.witness);
  const Vector& w = *gap.witness;
  CHECK(K.contains(w));
  CHECK(w[0] > 0.4 + 1e-9);
  CHECK(w[0] < 0.6 - 1e-9);

  for (auto m : {CoverageOptions::Mode::Exact, CoverageOptions::Mode::Sampling}) {
    const CoverageVerdict one = coversBody(K, {xSlab(-1, 2)}, mode(m));
    CHECK(one.covered);
  }
  CHECK_FALSE(coversBody(K, {xSlab(0, 0.4), xSlab(0.6, 1)}, mode(CoverageOptions::Mode::Sampling)).covered);
  CHECK_FALSE(coversBody(K, {xSlab(-1, 2)}, mode(CoverageOptions::Mode::Sampling)).certified);
}

TEST_CASE("crossing planks leave a corner uncovered") {
  const CoverageVerdict v = coversBody(unitSquare(), {xSlab(0, 0.6), ySlab(0, 0.6)});
  CHECK_FALSE(v.covered);
  REQUIRE(v.witness);
  CHECK((*v.witness)[0] > 0.6);
  CHECK((*v.witness)[1] > 0.6);
  CHECK(coversBody(unitSquare(), {xSlab(0, 0.6), ySlab(0, 0.6), xSlab(0.5, 1)}).covered);
}

TEST_CASE("closed planks cover their boundary") {
  CHECK(coversBody(unitSquare(), {xSlab(0, 0.5), xSlab(0.5, 1)}, mode(CoverageOptions::Mode::Exact)).covered);
  const PlankFamily halves{xSlab(-1, 0), xSlab(0, 1)};
  CHECK(coversBody(ConvexBody::box(Vector::Constant(2, -1), Vector::Ones(2)), halves).covered);
  // Both coverage modes need a polytope.
  CHECK(codeOf([&] { coversBody(disk(), halves); }) == ErrorCode::RepresentationUnavailable);
  CHECK(codeOf([&] { coversBody(disk(), halves, mode(CoverageOptions::Mode::Sampling)); }) ==
        ErrorCode::RepresentationUnavailable);
}

TEST_CASE("adding a plank never uncovers") {
  Rng rng(53);
  for (std::uint64_t s = 0; s < 25; ++s) {
    const ConvexBody K = randomBody(trialSeed(54, s), 2, 7);
    PlankFamily family;
    bool covered = false;
    for (int k = 0; k < 6; ++k) {
      const Direction u(rng.direction(2));
      const double c = rng.uniform(-0.8, 0.8);
      family.emplace_back(u, c - 0.3, c + 0.3);
      const bool now = coversBody(K, family).covered;
      if (covered) CHECK(now);
      covered = now;
    }
  }
}

TEST_CASE("exact and sampling modes agree on sampled witnesses") {
  Rng rng(55);
  int witnessed = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const ConvexBody K = randomBody(trialSeed(56, s), 2, 7);
    PlankFamily family;
    for (int k = 0; k < 3; ++k) {
      const double c = rng.uniform(-0.5, 0.5);
      family.emplace_back(Direction(rng.direction(2)), c - 0.35, c + 0.35);
    }
    const CoverageVerdict sampled = coversBody(K, family, mode(CoverageOptions::Mode::Sampling));
    const CoverageVerdict exact = coversBody(K, family, mode(CoverageOptions::Mode::Exact));
    if (sampled.witness) {
      ++witnessed;
      CHECK_FALSE(exact.covered);
      for (const Plank& p : family) CHECK_FALSE(p.contains(*sampled.witness, 1e-9));
    }
    if (exact.witness) {
      CHECK(K.contains(*exact.witness));
      for (const Plank& p : family) CHECK_FALSE(p.contains(*exact.witness, 1e-9));
    }
  }
  CHECK(witnessed > 0);
}

TEST_CASE("coverage of a body in three dimensions") {
  const ConvexBody cube = ConvexBody::box(Vector::Zero(3), Vector::Ones(3));
  const Direction e1(Vector{{1.0, 0.0, 0.0}});
  const Direction e2(Vector{{0.0, 1.0, 0.0}});
  CHECK(coversBody(cube, {Plank(e1, 0, 0.5), Plank(e1, 0.5, 1)}).covered);
  const CoverageVerdict v = coversBody(cube, {Plank(e1, 0, 0.7), Plank(e2, 0, 0.7)});
  CHECK_FALSE(v.covered);
  REQUIRE(v.witness);
  CHECK(cube.contains(*v.witness));
}

TEST_CASE("Bang deficits") {
  const ConvexBody K = unitSquare();
  CHECK(std::abs(bangDeficit(K, {xSlab(0, 0.5), xSlab(0.5, 1)})) <= 1e-9);
  CHECK(bangDeficit(K, {xSlab(-0.5, 1.5)}) == doctest::Approx(1.0));
  CHECK(codeOf([&] { bangDeficit(K, {xSlab(0, 0.4), xSlab(0.6, 1)}); }) == ErrorCode::NotACovering);
}

TEST_CASE("affine deficits") {
  const ConvexBody K = unitSquare();
  const AffineDeficit halves = affineDeficit(K, K, {xSlab(0, 0.5), xSlab(0.5, 1)}, 2);
  CHECK(halves.plankSum == doctest::Approx(1.0));
  CHECK(halves.bodyWidth == doctest::Approx(1.0));
  CHECK(std::abs(halves.deficit) <= 1e-9);
  CHECK(halves.m == 2);
  CHECK(halves.scaledInradius == doctest::Approx(1.0).epsilon(1e-8));

  const AffineDeficit slab = affineDeficit(K, K, {ySlab(0, 1)});
  CHECK(std::abs(slab.deficit) <= 1e-9);
  CHECK(slab.m == 0);
  CHECK(affineDeficit(K, K, {xSlab(-0.5, 1.5)}).deficit == doctest::Approx(1.0));
  CHECK(codeOf([&] { affineDeficit(K, K, {xSlab(0, 0.4)}); }) == ErrorCode::NotACovering);
}

TEST_CASE("two-plank checks") {
  const ConvexBody K = unitSquare();
  const TwoPlankReport halves = twoPlankCheck(K, K, xSlab(0, 0.5), xSlab(0.5, 1));
  CHECK(std::abs(halves.margin) <= 1e-9);
  CHECK_FALSE(halves.violation);

  const ConvexBody small = ConvexBody::box(Vector::Zero(2), Vector::Constant(2, 0.1));
  const TwoPlankReport crossing = twoPlankCheck(small, disk(), xSlab(0, 0.1), ySlab(-1, 1));
  CHECK(crossing.margin > 0);

  const TwoPlankReport thin = twoPlankCheck(K, K, xSlab(-1, 2), xSlab(0.3, 0.3));
  CHECK(thin.width2 == 0.0);
  CHECK(thin.margin == doctest::Approx(thin.width1 - thin.bodyWidth));
  CHECK(thin.margin >= 0);
  CHECK(codeOf([&] { twoPlankCheck(K, K, xSlab(0, 0.4), xSlab(0.6, 1)); }) == ErrorCode::NotACovering);
}

TEST_CASE("random coverings satisfy the proved inequalities") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ConvexBody K = randomBody(trialSeed(57, s), 2, 8);
    const PlankFamily family = randomPlankCovering(K, trialSeed(58, s), 2 + static_cast<int>(s % 3));
    REQUIRE(coversBody(K, family).covered);
    CHECK(bangDeficit(K, family) >= -1e-9);
    if (family.size() == 2) CHECK(twoPlankCheck(K, disk(), family[0], family[1]).margin >= -1e-6);
  }
}

TEST_CASE("method names") {
  CHECK(coverageMethodName(CoverageMethod::CellEnumeration) == "cell-enumeration");
  CHECK(coverageMethodName(CoverageMethod::Sampling) == "sampling");
}
