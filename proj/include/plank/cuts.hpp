#pragma once

#include "plank/convex_body.hpp"
#include "plank/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plank {

/// Binary tree of successive hyperplane cuts. A leaf is a piece; an internal
/// node cuts its region by `cut` into the part below (<n, x> <= c, child 0)
/// and the part above (child 1).
struct CutTree {
  std::optional<Hyperplane> cut;
  std::vector<CutTree> children;

  static CutTree leaf() { return {}; }
  static CutTree node(Hyperplane h, CutTree below, CutTree above);

  bool isLeaf() const noexcept { return !cut.has_value(); }
  const CutTree& below() const { return children.at(0); }
  const CutTree& above() const { return children.at(1); }
  int leafCount() const;
  int cutCount() const { return leafCount() - 1; }
};

enum class Provenance { SuccessiveCuts, Voronoi, Arrangement, User };

std::string_view provenanceName(Provenance p);
/// Throws ParseError on unknown names.
Provenance parseProvenance(std::string_view name);

/// Closed convex cells with pairwise disjoint interiors.
struct PartitionFamily {
  std::vector<ConvexBody> cells;
  Provenance provenance = Provenance::User;
  std::optional<ConvexBody> host;
  /// One line per cell dropped for having empty interior.
  std::vector<std::string> dropped;
};

/// Cuts K along the tree. Every cut must meet the interior of its region;
/// otherwise CutMissesRegion names the node by its path from the root
/// ("root", "root.below.above", ...). Leaves are listed depth first, below
/// before above.
PartitionFamily applyCutTree(const ConvexBody& K, const CutTree& tree);

/// All full-dimensional cells of K cut by every hyperplane at once. At most
/// 16 hyperplanes (TooManyHyperplanes otherwise).
PartitionFamily arrangementPieces(const ConvexBody& K, const std::vector<Hyperplane>& hyperplanes);

struct OptimalCuts {
  CutTree tree;
  double rho = 0.0;              ///< r_C(K, m n)
  Vector direction;              ///< normal shared by all cuts
  std::vector<double> offsets;   ///< increasing cut offsets
  double intervalLow = 0.0;      ///< support interval of the rounded body
  double intervalHigh = 0.0;
};

/// n - 1 parallel cuts realizing min over cut trees of the greatest
/// r_C(piece, m), which equals r_C(K, m n).
///
/// With rho = r_C(K, m n) and u the minimal C-width direction of the inner
/// parallel body E = K_{-rho C}, the rounded body E + rho C spans
/// [-h_E(-u) - rho h_C(-u), h_E(u) + rho h_C(u)] along u; the cuts divide that
/// interval into n equal parts. The tree is left-leaning: the root holds the
/// highest cut and every above child is a leaf.
OptimalCuts optimalConwayCuts(const ConvexBody& K, const ConvexBody& C, int n, int m, double tol = 1e-10);

struct GreatestPiece {
  double value = 0.0;
  int argPiece = -1;
  std::vector<double> perPiece;
};
GreatestPiece greatestPieceInradius(const PartitionFamily& pieces, const ConvexBody& C, int m, double tol = 1e-10);

/// Voronoi cells of the sites (rows) clipped to `clipBox`. Cells that miss
/// the box are dropped and logged. Throws DuplicateSites.
PartitionFamily voronoiPartition(const Matrix& sites, const ConvexBody& clipBox);

struct PartitionReport {
  int m = 1;
  std::vector<int> cellIndex;          ///< partition index of each kept cell
  std::vector<double> cellInradius;    ///< r_C(V_i cap K, m)
  std::vector<double> cellWidth;       ///< w_C(V_i cap K)
  std::vector<int> droppedCells;       ///< cells whose intersection with K has no interior
  double inradiusSum = 0.0;
  double bodyInradius = 0.0;           ///< r_C(K, m)
  double deficit = 0.0;                ///< inradiusSum - bodyInradius
  double widthSum = 0.0;
  double bodyWidth = 0.0;              ///< w_C(K)
  double widthDeficit = 0.0;
  double tolerance = 0.0;              ///< violation threshold (n + 1) tol
  bool certified = false;              ///< successive cuts or Voronoi
  bool violation = false;
  std::string hypothesis;              ///< "certified inductive" or "hypothesis unverified"
};

/// Checks sum_i r_C(V_i cap K, m) >= r_C(K, m) and sum_i w_C(V_i cap K) >=
/// w_C(K). Only successive-cut and Voronoi families are certified inductive;
/// other provenances throw UncertifiedPartition unless `allowUncertified`.
PartitionReport verifyPartitionInequality(const ConvexBody& K, const ConvexBody& C, const PartitionFamily& partition,
                                          int m, double tol = 1e-9, bool allowUncertified = false);

/// Random successive cut tree with n leaves: each step picks a current piece
/// uniformly, a direction uniform on the sphere and an offset uniform in the
/// piece's support interval shrunk by 1e-3 of its length at both ends.
CutTree randomCutTree(const ConvexBody& K, int n, std::uint64_t seed);

struct ConwayTrial {
  std::uint64_t seed = 0;
  double greatest = 0.0;
  double margin = 0.0;  ///< greatest - bound
  CutTree tree;
};

struct ConwayReport {
  int n = 1;
  int m = 1;
  double bound = 0.0;          ///< r_C(K, m n)
  double optimalGreatest = 0.0;
  double attainmentGap = 0.0;  ///< optimalGreatest - bound
  OptimalCuts optimal;
  std::vector<ConwayTrial> trials;
  double worstMargin = 0.0;
  int worstTrial = -1;
  std::vector<int> violations;  ///< trial indices with margin < -tol
  bool attainmentViolated = false;
  double tolerance = 0.0;

  bool ok() const { return violations.empty() && !attainmentViolated; }
};

/// Lower bound on random cut trees plus attainment by optimalConwayCuts.
/// Trial i uses trialSeed(seed, i); results do not depend on `threads`.
ConwayReport verifyConwayTheorem(const ConvexBody& K, const ConvexBody& C, int n, int m, int trials,
                                 std::uint64_t seed, double tol = 1e-5, int threads = 1);

}  // namespace plank
