#include "plank/search.hpp"

#include "plank/errors.hpp"
#include "plank/geometry.hpp"
#include "plank/inradius.hpp"
#include "plank/io.hpp"
#include "plank/lp.hpp"
#include "plank/parallel.hpp"
#include "plank/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>

namespace plank {

using Index = Eigen::Index;

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

void fnvDoubles(std::uint64_t& h, const double* data, Index count) {
  for (Index i = 0; i < count; ++i) {
    const double v = data[i] + 0.0;
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    fnv(h, &bits, sizeof bits);
  }
}

std::string hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

ConvexBody hullWithRetries(std::uint64_t seed, int d, int k, bool symmetric) {
  if (d < 2 || d > 8) throw Error(ErrorCode::InvalidArgument, "dimension must be in [2, 8]");
  if (k < d + 1 && !symmetric) throw Error(ErrorCode::InvalidArgument, "need at least d + 1 generator points");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "need at least one generator point");
  if (d >= 3 && (symmetric ? 2 * k : k) > 12)
    throw Error(ErrorCode::InvalidArgument, "at most 12 hull points in dimension >= 3");
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL);
    const int rows = symmetric ? 2 * k : k;
    Matrix pts(rows, d);
    for (int i = 0; i < k; ++i) {
      pts.row(i) = rng.inBall(d).transpose();
      if (symmetric) pts.row(k + i) = -pts.row(i);
    }
    try {
      ConvexBody body = ConvexBody::vertices(pts);
      if (!body.hasHalfspaces()) continue;
      // Reject slivers; they only exercise round-off.
      if (chebyshevBall(body.normals(), body.offsets()).radius < 0.02) continue;
      return body;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidBody) throw;
    }
  }
  throw Error(ErrorCode::GenerationFailed, "no full-dimensional random body in 100 attempts");
}

Matrix boundingRows(const ConvexBody& K) {
  if (K.hasVertices()) return K.vertexMatrix();
  if (K.isBall()) {
    Matrix m(2, K.dim());
    m.row(0) = (K.center().array() - K.radius()).transpose();
    m.row(1) = (K.center().array() + K.radius()).transpose();
    return m;
  }
  throw Error(ErrorCode::RepresentationUnavailable, "body has no vertex form");
}

ConvexBody clipBoxAround(const ConvexBody& K) {
  const Matrix v = boundingRows(K);
  const Vector lo = v.colwise().minCoeff().transpose();
  const Vector hi = v.colwise().maxCoeff().transpose();
  return ConvexBody::box(lo.array() - 1.0, hi.array() + 1.0);
}

Matrix randomSites(const ConvexBody& K, Rng& rng, int count) {
  Matrix sites(count, K.dim());
  for (int i = 0; i < count; ++i) sites.row(i) = randomInteriorPoint(K, rng.next()).transpose();
  return sites;
}

Hyperplane randomCrossingHyperplane(const ConvexBody& K, Rng& rng) {
  const Vector u = rng.direction(K.dim());
  const double lo = -detail::supportAlong(K, -u);
  const double hi = detail::supportAlong(K, u);
  const double margin = 1e-3 * (hi - lo);
  return {Direction(u), rng.uniform(lo + margin, hi - margin)};
}

double planarArea(const ConvexBody& body) { return detail::polygonArea(body.vertexMatrix()); }

// Arrangement cells with a few convex unions of neighbours merged. Convex
// but, unlike Voronoi cells or successive cuts, not known to be inductive.
PartitionFamily mergedArrangement(const ConvexBody& K, Rng& rng, int cuts) {
  std::vector<Hyperplane> hs;
  for (int i = 0; i < cuts; ++i) hs.push_back(randomCrossingHyperplane(K, rng));
  PartitionFamily p = arrangementPieces(K, hs);
  if (K.dim() != 2) return p;
  const double tolArea = 1e-9 * std::max(1.0, K.scale() * K.scale());
  for (int round = 0; round < 2 && p.cells.size() > 2; ++round) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < static_cast<int>(p.cells.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(p.cells.size()); ++j) pairs.emplace_back(i, j);
    for (std::size_t s = pairs.size(); s > 1; --s) std::swap(pairs[s - 1], pairs[static_cast<std::size_t>(rng.index(static_cast<int>(s)))]);
    for (auto [i, j] : pairs) {
      const Matrix& a = p.cells[static_cast<std::size_t>(i)].vertexMatrix();
      const Matrix& b = p.cells[static_cast<std::size_t>(j)].vertexMatrix();
      Matrix both(a.rows() + b.rows(), 2);
      both << a, b;
      const Matrix hull = detail::hullPolygon(both, 1e-12 * std::max(1.0, K.scale()));
      if (hull.rows() < 3) continue;
      const double sum = planarArea(p.cells[static_cast<std::size_t>(i)]) + planarArea(p.cells[static_cast<std::size_t>(j)]);
      if (detail::polygonArea(hull) > sum + tolArea) continue;
      p.cells[static_cast<std::size_t>(i)] = ConvexBody::vertices(hull);
      p.cells.erase(p.cells.begin() + j);
      break;
    }
  }
  p.provenance = Provenance::Arrangement;
  return p;
}

// Voronoi cells pushed outwards so neighbours overlap: a convex covering.
PartitionFamily enlargedVoronoi(const ConvexBody& K, Rng& rng, int sites) {
  PartitionFamily v = voronoiPartition(randomSites(K, rng, sites), clipBoxAround(K));
  PartitionFamily out;
  out.provenance = Provenance::User;
  out.host = v.host;
  const double reach = 0.15 * std::max(1e-3, K.scale());
  for (const ConvexBody& cell : v.cells) {
    const Vector grown = cell.offsets().array() + rng.uniform(0.0, reach);
    out.cells.push_back(ConvexBody::halfspaces(cell.normals(), grown));
  }
  return out;
}

double partitionDeficit(const Instance& inst, double tol, bool width) {
  const PartitionReport r = verifyPartitionInequality(inst.K, inst.C, *inst.partition, inst.m, tol, true);
  return width ? r.widthDeficit : r.deficit;
}

void requirePart(bool present, const char* what) {
  if (!present) throw Error(ErrorCode::InvalidArgument, std::string("instance lacks ") + what);
}

}  // namespace

ConvexBody randomBody(std::uint64_t seed, int d, int k) { return hullWithRetries(seed, d, k, false); }

ConvexBody randomSymmetricBody(std::uint64_t seed, int d, int k) { return hullWithRetries(seed, d, k, true); }

std::string textDigest(std::string_view text) {
  std::uint64_t h = kFnvOffset;
  fnv(h, text.data(), text.size());
  return hex(h);
}

std::string bodyDigest(const ConvexBody& body) {
  std::uint64_t h = kFnvOffset;
  const int kind = static_cast<int>(body.kind());
  const int dim = body.dim();
  fnv(h, &kind, sizeof kind);
  fnv(h, &dim, sizeof dim);
  if (body.isBall()) {
    fnvDoubles(h, body.center().data(), body.center().size());
    const double r = body.radius();
    fnvDoubles(h, &r, 1);
  } else if (body.kind() == ConvexBody::Kind::Vertices) {
    const Matrix v = body.vertexMatrix();
    fnvDoubles(h, v.data(), v.size());
  } else {
    // The serialized form, not the derived vertex cache, so a JSON round-trip keeps the digest.
    const Matrix a = body.normals();
    fnvDoubles(h, a.data(), a.size());
    fnvDoubles(h, body.offsets().data(), body.offsets().size());
  }
  return hex(h);
}

Vector randomInteriorPoint(const ConvexBody& K, std::uint64_t seed) {
  Rng rng(seed);
  if (K.isBall()) return K.center() + K.radius() * rng.inBall(K.dim());
  if (!K.hasVertices()) throw Error(ErrorCode::RepresentationUnavailable, "body has no vertex form");
  const Matrix& V = K.vertexMatrix();
  Vector w(V.rows());
  for (Index i = 0; i < w.size(); ++i) {
    double u = 0.0;
    while (u <= 0.0) u = rng.uniform();
    w[i] = -std::log(u);
  }
  return V.transpose() * (w / w.sum());
}

PlankFamily randomPlankCovering(const ConvexBody& K, std::uint64_t seed, int n, int perturbations) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "a covering needs at least one plank");
  if (n > 16) throw Error(ErrorCode::InvalidArgument, "at most 16 planks keep coverage certifiable");
  Rng rng(seed);
  const Vector u = rng.direction(K.dim());
  const Direction dir(u);
  const double lo = -detail::supportAlong(K, -u);
  const double hi = detail::supportAlong(K, u);
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (double& w : weights) w = rng.uniform(0.25, 1.0);
  double total = 0.0;
  for (double w : weights) total += w;
  PlankFamily planks;
  double at = lo;
  for (int i = 0; i < n; ++i) {
    const double next = i + 1 == n ? hi : at + (hi - lo) * weights[static_cast<std::size_t>(i)] / total;
    planks.emplace_back(dir, at, next);
    at = next;
  }
  const double extent = hi - lo;
  for (int t = 0; t < perturbations; ++t) {
    const int i = rng.index(n);
    const Plank& old = planks[static_cast<std::size_t>(i)];
    const Vector center = 0.5 * (old.low() + old.high()) * old.normal().vector();
    const Direction normal = Direction::normalized(old.normal().vector() + 0.3 * rng.gaussianVector(K.dim()));
    const double mid = normal.dot(center) + rng.uniform(-0.1, 0.1) * extent;
    const double half = 0.5 * old.width() * rng.uniform(0.9, 1.4);
    PlankFamily trial = planks;
    trial[static_cast<std::size_t>(i)] = Plank(normal, mid - half, mid + half);
    if (coversBody(K, trial).covered) planks = std::move(trial);
  }
  return planks;
}

std::string_view targetName(ProbeTarget t) {
  switch (t) {
    case ProbeTarget::AffinePlank: return "affine-plank";
    case ProbeTarget::SuccessivePlank: return "successive-plank";
    case ProbeTarget::CutConjecture: return "cut-conjecture";
    case ProbeTarget::PartitionProblem: return "partition-problem";
    case ProbeTarget::CoveringProblem: return "covering-problem";
    case ProbeTarget::Bang: return "bang";
    case ProbeTarget::Ball: return "ball";
    case ProbeTarget::TwoPlank: return "two-plank";
    case ProbeTarget::Conway: return "conway";
    case ProbeTarget::AkopyanKarasev: return "akopyan-karasev";
    case ProbeTarget::CorollaryWidth: return "corollary-width";
  }
  return "affine-plank";
}

ProbeTarget parseTarget(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ProbeTarget::CorollaryWidth); ++i) {
    const auto t = static_cast<ProbeTarget>(i);
    if (targetName(t) == name) return t;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown probe target '" + std::string(name) + "'");
}

bool isProvedStatement(ProbeTarget t) { return static_cast<int>(t) >= static_cast<int>(ProbeTarget::Bang); }

void ProbeConfig::validate() const {
  const auto fail = [](const char* msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (trials < 1) fail("trials must be at least 1");
  if (dimension < 2 || dimension > 8) fail("dimension must be in [2, 8]");
  if (!(tolerance > 0)) fail("tolerance must be positive");
  if (m < 1) fail("m must be at least 1");
  if (n < 1) fail("n must be at least 1");
  if (bodyPoints < dimension + 1 || gaugePoints < dimension + 1) fail("need at least d + 1 generator points");
  if (planks < 1 || planks > 16) fail("planks must be in [1, 16]");
  if (sitesMin < 1 || sitesMax < sitesMin) fail("need 1 <= sitesMin <= sitesMax");
  if (threads < 0) fail("threads must be non-negative");
}

Instance generateInstance(const ProbeConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  const int d = config.dimension;
  const std::uint64_t bodySeed = rng.next();
  const std::uint64_t gaugeSeed = rng.next();
  const ProbeTarget t = config.target;

  const bool symmetric = t == ProbeTarget::Ball;
  const ConvexBody K = symmetric ? randomSymmetricBody(bodySeed, d, std::max(d, config.bodyPoints / 2))
                                 : randomBody(bodySeed, d, config.bodyPoints);
  const bool sameGauge = t == ProbeTarget::AffinePlank || symmetric;
  Instance inst(t, K, sameGauge ? K : randomBody(gaugeSeed, d, config.gaugePoints));
  inst.seed = seed;
  inst.m = config.m;
  inst.n = config.n;

  const int sites = config.sitesMin + rng.index(config.sitesMax - config.sitesMin + 1);
  switch (t) {
    case ProbeTarget::AffinePlank:
    case ProbeTarget::SuccessivePlank:
    case ProbeTarget::Bang:
    case ProbeTarget::Ball:
      inst.planks = randomPlankCovering(K, rng.next(), config.planks);
      break;
    case ProbeTarget::TwoPlank:
      inst.planks = randomPlankCovering(K, rng.next(), 2);
      break;
    case ProbeTarget::CutConjecture:
      for (int i = 1; i < config.n; ++i) inst.hyperplanes.push_back(randomCrossingHyperplane(K, rng));
      break;
    case ProbeTarget::Conway:
      inst.tree = randomCutTree(K, config.n, rng.next());
      break;
    case ProbeTarget::AkopyanKarasev:
    case ProbeTarget::CorollaryWidth:
      inst.partition = voronoiPartition(randomSites(K, rng, sites), clipBoxAround(K));
      break;
    case ProbeTarget::PartitionProblem:
      if (rng.index(2) == 0) {
        inst.partition = voronoiPartition(randomSites(K, rng, sites), clipBoxAround(K));
      } else {
        inst.partition = mergedArrangement(K, rng, std::max(1, sites - 1));
      }
      break;
    case ProbeTarget::CoveringProblem:
      inst.partition = enlargedVoronoi(K, rng, sites);
      break;
  }
  return inst;
}

double evaluateInstance(const Instance& inst, double tol) {
  switch (inst.target) {
    case ProbeTarget::AffinePlank:
    case ProbeTarget::Ball:
      requirePart(!inst.planks.empty(), "planks");
      return affineDeficit(inst.K, inst.C, inst.planks).deficit;
    case ProbeTarget::SuccessivePlank:
      requirePart(!inst.planks.empty(), "planks");
      return affineDeficit(inst.K, inst.C, inst.planks, inst.m, tol).successiveDeficit;
    case ProbeTarget::Bang:
      requirePart(!inst.planks.empty(), "planks");
      return bangDeficit(inst.K, inst.planks);
    case ProbeTarget::TwoPlank:
      requirePart(inst.planks.size() == 2, "exactly two planks");
      return twoPlankCheck(inst.K, inst.C, inst.planks[0], inst.planks[1]).margin;
    case ProbeTarget::CutConjecture: {
      const PartitionFamily pieces = arrangementPieces(inst.K, inst.hyperplanes);
      const double bound = successiveInradius(inst.K, inst.C, inst.m * inst.n, tol).rho;
      return greatestPieceInradius(pieces, centeredGauge(inst.C), inst.m, tol).value - bound;
    }
    case ProbeTarget::Conway: {
      requirePart(inst.tree.has_value(), "a cut tree");
      const PartitionFamily pieces = applyCutTree(inst.K, *inst.tree);
      const double bound = successiveInradius(inst.K, inst.C, inst.m * inst.n, tol).rho;
      return greatestPieceInradius(pieces, centeredGauge(inst.C), inst.m, tol).value - bound;
    }
    case ProbeTarget::AkopyanKarasev:
    case ProbeTarget::PartitionProblem:
    case ProbeTarget::CoveringProblem:
      requirePart(inst.partition.has_value(), "a partition");
      return partitionDeficit(inst, tol, false);
    case ProbeTarget::CorollaryWidth:
      requirePart(inst.partition.has_value(), "a partition");
      return partitionDeficit(inst, tol, true);
  }
  return 0.0;
}

ProbeReport probe(const ProbeConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  constexpr double kInner = 1e-10;
  ProbeReport report;
  report.config = config;
  report.perTrial.resize(static_cast<std::size_t>(config.trials));
  parallelFor(config.trials, config.threads, [&](int i) {
    TrialRecord& rec = report.perTrial[static_cast<std::size_t>(i)];
    rec.seed = trialSeed(config.masterSeed, static_cast<std::uint64_t>(i));
    const Instance inst = generateInstance(config, rec.seed);
    rec.digest = textDigest(toJson(inst).dump());
    rec.deficit = evaluateInstance(inst, kInner);
  });

  report.minDeficit = std::numeric_limits<double>::infinity();
  std::vector<int> suspects;
  for (int i = 0; i < config.trials; ++i) {
    const double d = report.perTrial[static_cast<std::size_t>(i)].deficit;
    if (d < report.minDeficit) {
      report.minDeficit = d;
      report.argMin = i;
    }
    report.runningMin.push_back(report.minDeficit);
    if (d < -config.tolerance) suspects.push_back(i);
  }
  report.argMinInstance = generateInstance(config, report.perTrial[static_cast<std::size_t>(report.argMin)].seed);
  for (int i : suspects) {
    const TrialRecord& rec = report.perTrial[static_cast<std::size_t>(i)];
    Instance inst = generateInstance(config, rec.seed);
    const double again = evaluateInstance(inst, kInner / 10.0);
    if (again < -config.tolerance) report.violations.push_back({i, rec.deficit, again, std::move(inst)});
  }

  const std::string n = std::to_string(config.trials);
  const std::string k = std::to_string(report.violations.size());
  if (isProvedStatement(config.target)) {
    report.verdict = report.violations.empty()
                         ? "no violation found in " + n + " trials"
                         : "violation of a proved statement in " + k + " of " + n + " trials (implementation bug)";
  } else {
    report.verdict = report.violations.empty() ? "no counterexample found in " + n + " trials"
                                               : "counterexample candidate found in " + k + " of " + n + " trials";
  }
  if (config.timing)
    report.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace plank
