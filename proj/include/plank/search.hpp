#pragma once

#include "plank/convex_body.hpp"
#include "plank/cuts.hpp"
#include "plank/planks.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plank {

/// Convex hull of k points drawn uniformly from the unit ball, resampled
/// until full-dimensional. In the plane the result carries both forms; in
/// d >= 3 facets come from brute-force enumeration, so k <= 12 there.
/// Throws GenerationFailed after 100 attempts.
ConvexBody randomBody(std::uint64_t seed, int d, int k);

/// Hull of k random points and their mirror images: centrally symmetric
/// about the origin.
ConvexBody randomSymmetricBody(std::uint64_t seed, int d, int k);

/// FNV-1a over the body's representation, as 16 hex digits.
std::string bodyDigest(const ConvexBody& body);
/// FNV-1a over arbitrary text, as 16 hex digits.
std::string textDigest(std::string_view text);

/// n planks guaranteed to cover K. The support interval of K along a random
/// direction is split into n contiguous slabs with random proportions; then
/// `perturbations` random tilts and shifts of single planks are tried and
/// each is kept only if the family still covers K.
PlankFamily randomPlankCovering(const ConvexBody& K, std::uint64_t seed, int n, int perturbations = 8);

/// Random point of the body (random convex combination of its vertices).
Vector randomInteriorPoint(const ConvexBody& K, std::uint64_t seed);

enum class ProbeTarget {
  // open statements
  AffinePlank,
  SuccessivePlank,
  CutConjecture,
  PartitionProblem,
  CoveringProblem,
  // proved statements; a violation means an implementation bug
  Bang,
  Ball,
  TwoPlank,
  Conway,
  AkopyanKarasev,
  CorollaryWidth,
};

std::string_view targetName(ProbeTarget t);
/// Throws InvalidArgument on unknown names.
ProbeTarget parseTarget(std::string_view name);
bool isProvedStatement(ProbeTarget t);

struct ProbeConfig {
  ProbeTarget target = ProbeTarget::AffinePlank;
  int dimension = 2;
  int trials = 100;
  std::uint64_t masterSeed = 1;
  int m = 1;
  int n = 2;
  double tolerance = 1e-6;
  int bodyPoints = 8;    ///< generator points of K
  int gaugePoints = 6;   ///< generator points of C
  int planks = 3;        ///< planks per covering
  int sitesMin = 2;      ///< Voronoi sites per partition
  int sitesMax = 6;
  int threads = 0;       ///< 0 = machine parallelism; never changes results
  bool timing = false;   ///< include wall time in the report

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// Everything needed to re-evaluate one trial from its serialization.
struct Instance {
  Instance(ProbeTarget target, ConvexBody body, ConvexBody gauge) : target(target), K(std::move(body)), C(std::move(gauge)) {}

  ProbeTarget target;
  ConvexBody K;
  ConvexBody C;
  std::uint64_t seed = 0;
  int m = 1;
  int n = 1;
  PlankFamily planks;
  std::vector<Hyperplane> hyperplanes;
  std::optional<CutTree> tree;
  std::optional<PartitionFamily> partition;
};

/// Builds the random instance of one trial.
Instance generateInstance(const ProbeConfig& config, std::uint64_t seed);

/// Left-hand side minus right-hand side of the target statement.
/// `tol` is the bisection tolerance of the inradius computations.
double evaluateInstance(const Instance& instance, double tol = 1e-10);

struct TrialRecord {
  std::uint64_t seed = 0;
  double deficit = 0.0;
  std::string digest;
};

struct Violation {
  int trial = -1;
  double deficit = 0.0;
  double recheckedDeficit = 0.0;  ///< at a ten times tighter tolerance
  Instance instance;
};

struct ProbeReport {
  ProbeConfig config;
  std::vector<TrialRecord> perTrial;
  std::vector<double> runningMin;
  double minDeficit = 0.0;
  int argMin = -1;
  std::optional<Instance> argMinInstance;
  std::vector<Violation> violations;
  std::string verdict;
  std::optional<double> wallTime;

  bool violationFound() const { return !violations.empty(); }
};

/// Runs config.trials independent trials, trial i seeded by
/// trialSeed(masterSeed, i). Deficits below -tolerance are re-evaluated with
/// the inradius tolerance tightened tenfold and reported only if they stay
/// below. The verdict never claims more than the absence of a counterexample.
ProbeReport probe(const ProbeConfig& config);

}  // namespace plank
