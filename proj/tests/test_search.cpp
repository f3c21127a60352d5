#include "plank/errors.hpp"
#include "plank/geometry.hpp"
#include "plank/io.hpp"
#include "plank/random.hpp"
#include "plank/search.hpp"

#include "doctest.h"

#include <cmath>
#include <set>

using namespace plank;

namespace {

ConvexBody centeredSquare() { return ConvexBody::box(Vector::Constant(2, -0.5), Vector::Constant(2, 0.5)); }

ProbeConfig config(ProbeTarget t, int trials, std::uint64_t seed = 3) {
  ProbeConfig c;
  c.target = t;
  c.trials = trials;
  c.masterSeed = seed;
  return c;
}

}  // namespace

TEST_CASE("random bodies are reproducible bit for bit") {
  for (int d : {2, 3}) {
    const ConvexBody a = randomBody(42, d, 9);
    const ConvexBody b = randomBody(42, d, 9);
    CHECK(a.normals() == b.normals());
    CHECK(a.offsets() == b.offsets());
    CHECK(bodyDigest(a) == bodyDigest(b));
  }
}

TEST_CASE("d + 1 generator points give a simplex") {
  CHECK(randomBody(7, 2, 3).vertexMatrix().rows() == 3);
  const ConvexBody s = randomBody(7, 3, 4);
  CHECK(s.normals().rows() == 4);
  CHECK(s.vertexMatrix().rows() == 4);
  CHECK_THROWS_AS(randomBody(7, 3, 3), Error);
  CHECK_THROWS_AS(randomBody(7, 3, 13), Error);
}

TEST_CASE("distinct seeds give distinct digests") {
  std::set<std::string> digests;
  for (std::uint64_t s = 0; s < 200; ++s) digests.insert(bodyDigest(randomBody(s, 2, 6)));
  CHECK(digests.size() == 200);
}

TEST_CASE("random bodies lie in the unit ball and have room inside") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ConvexBody K = randomBody(s, 2, 5);
    const Matrix& v = K.vertexMatrix();
    CHECK(v.rowwise().norm().maxCoeff() <= 1.0 + 1e-12);
    CHECK(cInradius(K, ConvexBody::ball(Vector::Zero(2), 1.0)).scale >= 0.02 - 1e-12);
  }
}

TEST_CASE("symmetric bodies are symmetric") {
  const ConvexBody C = randomSymmetricBody(11, 2, 5);
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const Direction u(rng.direction(2));
    CHECK(supportValue(C, u) == doctest::Approx(supportValue(C, -u)).epsilon(1e-12));
  }
}

TEST_CASE("random coverings cover") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const ConvexBody K = randomBody(trialSeed(60, s), 2, 7);
    const int n = 1 + static_cast<int>(s % 5);
    const PlankFamily f = randomPlankCovering(K, trialSeed(61, s), n);
    CHECK(static_cast<int>(f.size()) == n);
    CHECK(coversBody(K, f).covered);
  }
  const ConvexBody cube = ConvexBody::box(Vector::Zero(3), Vector::Ones(3));
  CHECK(coversBody(cube, randomPlankCovering(cube, 5, 3)).covered);
}

TEST_CASE("unperturbed coverings split one support interval") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ConvexBody K = randomBody(trialSeed(62, s), 2, 7);
    const PlankFamily f = randomPlankCovering(K, trialSeed(63, s), 2, 0);
    REQUIRE(f.size() == 2);
    const Direction& u = f[0].normal();
    CHECK((f[1].normal().vector() - u.vector()).norm() <= 1e-15);
    CHECK(f[0].width() + f[1].width() == doctest::Approx(widthParallel(K, u)).epsilon(1e-12));
    const PlankFamily one = randomPlankCovering(K, trialSeed(63, s), 1, 0);
    CHECK(plankRelativeWidth(one[0], K) >= 1.0 - 1e-9);
  }
}

TEST_CASE("interior points are interior") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ConvexBody K = randomBody(trialSeed(64, s), 2, 6);
    CHECK(K.contains(randomInteriorPoint(K, s), 0.0));
  }
}

TEST_CASE("axis slabs of the square have zero affine deficit") {
  const ConvexBody K = ConvexBody::box(Vector::Zero(2), Vector::Ones(2));
  Instance inst(ProbeTarget::AffinePlank, K, K);
  const Direction e1(Vector{{1.0, 0.0}});
  inst.planks = {Plank(e1, 0, 0.5), Plank(e1, 0.5, 1)};
  CHECK(std::abs(evaluateInstance(inst)) <= 1e-9);
}

TEST_CASE("equal parallel cuts of the cube have zero cut deficit") {
  for (int n : {2, 3, 4}) {
    Instance inst(ProbeTarget::CutConjecture, centeredSquare(), centeredSquare());
    inst.n = n;
    inst.m = 1;
    for (int k = 1; k < n; ++k) inst.hyperplanes.push_back({Direction(Vector{{1.0, 0.0}}), -0.5 + double(k) / n});
    CHECK(std::abs(evaluateInstance(inst)) <= 1e-9);
  }
}

TEST_CASE("target names round-trip") {
  for (int t = 0; t <= static_cast<int>(ProbeTarget::CorollaryWidth); ++t) {
    const auto target = static_cast<ProbeTarget>(t);
    CHECK(parseTarget(targetName(target)) == target);
  }
  CHECK_FALSE(isProvedStatement(ProbeTarget::AffinePlank));
  CHECK(isProvedStatement(ProbeTarget::Conway));
  CHECK_THROWS_AS(parseTarget("nope"), Error);
}

TEST_CASE("invalid configurations are rejected") {
  ProbeConfig c = config(ProbeTarget::AffinePlank, 0);
  CHECK_THROWS_AS(c.validate(), Error);
  c.trials = 1;
  c.dimension = 9;
  CHECK_THROWS_AS(c.validate(), Error);
  c.dimension = 2;
  c.tolerance = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("proved targets show no violations") {
  for (ProbeTarget t : {ProbeTarget::Bang, ProbeTarget::Ball, ProbeTarget::TwoPlank, ProbeTarget::Conway,
                        ProbeTarget::AkopyanKarasev, ProbeTarget::CorollaryWidth}) {
    const ProbeReport r = probe(config(t, 20));
    CAPTURE(targetName(t));
    CHECK(r.violations.empty());
    CHECK(r.minDeficit >= -r.config.tolerance);
    CHECK(r.verdict == "no violation found in 20 trials");
  }
}

TEST_CASE("open targets produce consistent reports") {
  for (ProbeTarget t : {ProbeTarget::AffinePlank, ProbeTarget::SuccessivePlank, ProbeTarget::CutConjecture,
                        ProbeTarget::PartitionProblem, ProbeTarget::CoveringProblem}) {
    ProbeConfig c = config(t, 15);
    c.m = 2;
    const ProbeReport r = probe(c);
    CAPTURE(targetName(t));
    REQUIRE(r.perTrial.size() == 15);
    double least = r.perTrial[0].deficit;
    for (std::size_t i = 0; i < r.perTrial.size(); ++i) {
      least = std::min(least, r.perTrial[i].deficit);
      CHECK(r.runningMin[i] == least);
      if (r.perTrial[i].deficit < -c.tolerance) {
        bool listed = false;
        for (const Violation& v : r.violations) listed = listed || v.trial == static_cast<int>(i);
        CHECK(listed);
      }
    }
    CHECK(r.minDeficit == least);
    CHECK(r.perTrial[r.argMin].deficit == least);
    REQUIRE(r.argMinInstance);
    if (r.violations.empty()) CHECK(r.verdict == "no counterexample found in 15 trials");
  }
}

TEST_CASE("probe reports do not depend on the thread count") {
  for (ProbeTarget t : {ProbeTarget::AffinePlank, ProbeTarget::CutConjecture, ProbeTarget::PartitionProblem}) {
    ProbeConfig one = config(t, 12, 77);
    one.threads = 1;
    ProbeConfig four = one;
    four.threads = 4;
    CHECK(dumpJson(toJson(probe(one))) == dumpJson(toJson(probe(four))));
  }
}

TEST_CASE("serialized instances reproduce their deficits") {
  for (ProbeTarget t : {ProbeTarget::AffinePlank, ProbeTarget::SuccessivePlank, ProbeTarget::CutConjecture,
                        ProbeTarget::PartitionProblem, ProbeTarget::CoveringProblem, ProbeTarget::Conway,
                        ProbeTarget::AkopyanKarasev}) {
    ProbeConfig c = config(t, 8, 123);
    const ProbeReport r = probe(c);
    REQUIRE(r.argMinInstance);
    const Instance back = instanceFromJson(Json::parse(dumpJson(toJson(*r.argMinInstance))));
    CAPTURE(targetName(t));
    CHECK(std::abs(evaluateInstance(back) - r.minDeficit) <= 1e-9);
    for (int i = 0; i < 3; ++i) {
      const Instance inst = generateInstance(c, r.perTrial[i].seed);
      CHECK(evaluateInstance(instanceFromJson(toJson(inst))) == doctest::Approx(r.perTrial[i].deficit).epsilon(1e-9));
    }
  }
}

TEST_CASE("probes run in three dimensions") {
  ProbeConfig c = config(ProbeTarget::AffinePlank, 3);
  c.dimension = 3;
  const ProbeReport r = probe(c);
  CHECK(r.perTrial.size() == 3);
  CHECK(r.violations.empty());
}

TEST_CASE("wall time appears only on request") {
  ProbeConfig c = config(ProbeTarget::Bang, 2);
  CHECK_FALSE(probe(c).wallTime);
  c.timing = true;
  CHECK(probe(c).wallTime);
}
