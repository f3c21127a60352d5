#include "plank/cuts.hpp"

#include "plank/errors.hpp"
#include "plank/inradius.hpp"
#include "plank/parallel.hpp"
#include "plank/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plank {

using Index = Eigen::Index;

CutTree CutTree::node(Hyperplane h, CutTree below, CutTree above) {
  CutTree t;
  t.cut = std::move(h);
  t.children.reserve(2);
  t.children.push_back(std::move(below));
  t.children.push_back(std::move(above));
  return t;
}

int CutTree::leafCount() const {
  if (isLeaf()) return 1;
  return below().leafCount() + above().leafCount();
}

std::string_view provenanceName(Provenance p) {
  switch (p) {
    case Provenance::SuccessiveCuts: return "successive-cuts";
    case Provenance::Voronoi: return "voronoi";
    case Provenance::Arrangement: return "arrangement";
    case Provenance::User: return "user";
  }
  return "user";
}

Provenance parseProvenance(std::string_view name) {
  for (Provenance p : {Provenance::SuccessiveCuts, Provenance::Voronoi, Provenance::Arrangement, Provenance::User}) {
    if (provenanceName(p) == name) return p;
  }
  throw Error(ErrorCode::ParseError, "unknown provenance '" + std::string(name) + "'");
}

namespace {

void requireHalfspaces(const ConvexBody& K, const char* what) {
  if (!K.hasHalfspaces())
    throw Error(ErrorCode::RepresentationUnavailable, std::string(what) + " needs a body in halfspace form");
}

void applyNode(const ConvexBody& region, const CutTree& node, const std::string& path, std::vector<ConvexBody>& out) {
  if (node.isLeaf()) {
    out.push_back(region);
    return;
  }
  const HalfspaceSet lower = sliceWithHalfspace(region, *node.cut, Side::Below);
  const HalfspaceSet upper = sliceWithHalfspace(region, *node.cut, Side::Above);
  if (!lower.fullDimensional() || !upper.fullDimensional())
    throw Error(ErrorCode::CutMissesRegion, "cut at node " + path + " does not meet the interior of its region");
  applyNode(*lower.body, node.below(), path + ".below", out);
  applyNode(*upper.body, node.above(), path + ".above", out);
}

// Region cut by the hyperplane on both sides; empty optional when one side
// has no interior.
std::optional<std::pair<ConvexBody, ConvexBody>> split(const ConvexBody& region, const Hyperplane& h) {
  HalfspaceSet lower = sliceWithHalfspace(region, h, Side::Below);
  HalfspaceSet upper = sliceWithHalfspace(region, h, Side::Above);
  if (!lower.fullDimensional() || !upper.fullDimensional()) return std::nullopt;
  return std::make_pair(std::move(*lower.body), std::move(*upper.body));
}

// K intersected with the rows of `cell`.
HalfspaceSet intersectWith(const ConvexBody& K, const ConvexBody& cell) {
  const Matrix& A = K.normals();
  const Matrix& B = cell.normals();
  Matrix rows(A.rows() + B.rows(), A.cols());
  Vector rhs(A.rows() + B.rows());
  rows << A, B;
  rhs << K.offsets(), cell.offsets();
  if (K.dim() == 2) return intersectHalfspaces(rows, rhs, &K.vertexMatrix());
  return intersectHalfspaces(rows, rhs, nullptr);
}

}  // namespace

PartitionFamily applyCutTree(const ConvexBody& K, const CutTree& tree) {
  requireHalfspaces(K, "cutting");
  PartitionFamily out;
  out.provenance = Provenance::SuccessiveCuts;
  out.host = K;
  applyNode(K, tree, "root", out.cells);
  return out;
}

PartitionFamily arrangementPieces(const ConvexBody& K, const std::vector<Hyperplane>& hyperplanes) {
  requireHalfspaces(K, "cutting");
  if (hyperplanes.size() > 16) {
    throw Error(ErrorCode::TooManyHyperplanes,
                std::to_string(hyperplanes.size()) + " hyperplanes given, at most 16 supported");
  }
  // Refining cell by cell visits exactly the non-empty sign vectors.
  std::vector<ConvexBody> cells{K};
  for (const Hyperplane& h : hyperplanes) {
    if (h.normal.dim() != K.dim()) throw Error(ErrorCode::DimensionMismatch, "cut and body differ in dimension");
    std::vector<ConvexBody> next;
    next.reserve(cells.size() * 2);
    for (const ConvexBody& c : cells) {
      if (auto parts = split(c, h)) {
        next.push_back(std::move(parts->first));
        next.push_back(std::move(parts->second));
      } else {
        next.push_back(c);
      }
    }
    cells = std::move(next);
  }
  PartitionFamily out;
  out.cells = std::move(cells);
  out.provenance = Provenance::Arrangement;
  out.host = K;
  return out;
}

OptimalCuts optimalConwayCuts(const ConvexBody& K, const ConvexBody& C, int n, int m, double tol) {
  requireSameDimension(K, C);
  requireHalfspaces(K, "cutting");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be a positive integer");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be a positive integer");
  const ConvexBody gauge = centeredGauge(C);

  OptimalCuts out;
  out.rho = successiveInradius(K, gauge, m * n, tol).rho;
  const HalfspaceSet e = erode(K, gauge, out.rho);
  if (n == 1) {
    const WidthResult w = minimalRelativeWidth(K, gauge);
    out.direction = w.direction.vector();
    out.intervalLow = -detail::supportAlong(K, -out.direction);
    out.intervalHigh = detail::supportAlong(K, out.direction);
    out.tree = CutTree::leaf();
    return out;
  }
  double lowE = 0.0;
  double highE = 0.0;
  if (e.fullDimensional()) {
    out.direction = minimalRelativeWidth(*e.body, gauge).direction.vector();
    lowE = -detail::supportAlong(*e.body, -out.direction);
    highE = detail::supportAlong(*e.body, out.direction);
  } else {
    // The erosion collapsed to lower dimension at the tolerance limit; its
    // flat direction is the one of zero width, found on a slightly smaller
    // radius.
    const HalfspaceSet inner = erode(K, gauge, out.rho * (1.0 - 1e-6));
    const ConvexBody& body = inner.fullDimensional() ? *inner.body : K;
    out.direction = minimalRelativeWidth(body, gauge).direction.vector();
    lowE = -lpSupportValue(e.normals, e.offsets, -out.direction);
    highE = lpSupportValue(e.normals, e.offsets, out.direction);
  }
  const Vector& u = out.direction;
  out.intervalLow = lowE - out.rho * detail::supportAlong(gauge, -u);
  out.intervalHigh = highE + out.rho * detail::supportAlong(gauge, u);
  const double step = (out.intervalHigh - out.intervalLow) / n;
  for (int k = 1; k < n; ++k) out.offsets.push_back(out.intervalLow + k * step);

  CutTree tree = CutTree::leaf();
  for (double c : out.offsets) tree = CutTree::node({Direction(u), c}, std::move(tree), CutTree::leaf());
  out.tree = std::move(tree);
  return out;
}

GreatestPiece greatestPieceInradius(const PartitionFamily& pieces, const ConvexBody& C, int m, double tol) {
  GreatestPiece out;
  out.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pieces.cells.size(); ++i) {
    const double r = successiveInradius(pieces.cells[i], C, m, tol).rho;
    out.perPiece.push_back(r);
    if (r > out.value) {
      out.value = r;
      out.argPiece = static_cast<int>(i);
    }
  }
  if (pieces.cells.empty()) throw Error(ErrorCode::InvalidArgument, "partition has no cells");
  return out;
}

PartitionFamily voronoiPartition(const Matrix& sites, const ConvexBody& clipBox) {
  requireHalfspaces(clipBox, "Voronoi clipping");
  if (sites.rows() < 1) throw Error(ErrorCode::InvalidArgument, "at least one site is required");
  if (sites.cols() != clipBox.dim()) throw Error(ErrorCode::DimensionMismatch, "sites and clip box differ in dimension");
  const Index n = sites.rows();
  const double scale = std::max(1.0, sites.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if ((sites.row(i) - sites.row(j)).norm() <= 1e-12 * scale) {
        std::ostringstream os;
        os << "sites " << i << " and " << j << " coincide";
        throw Error(ErrorCode::DuplicateSites, os.str());
      }
    }
  }
  PartitionFamily out;
  out.provenance = Provenance::Voronoi;
  out.host = clipBox;
  const Matrix& A = clipBox.normals();
  for (Index i = 0; i < n; ++i) {
    Matrix rows(A.rows() + n - 1, A.cols());
    Vector rhs(A.rows() + n - 1);
    rows.topRows(A.rows()) = A;
    rhs.head(A.rows()) = clipBox.offsets();
    Index r = A.rows();
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vector diff = (sites.row(j) - sites.row(i)).transpose();
      rows.row(r) = diff.transpose();
      rhs[r] = 0.5 * (sites.row(j).squaredNorm() - sites.row(i).squaredNorm());
      ++r;
    }
    const HalfspaceSet cell = clipBox.dim() == 2 ? intersectHalfspaces(rows, rhs, &clipBox.vertexMatrix())
                                                 : intersectHalfspaces(rows, rhs, nullptr);
    if (cell.fullDimensional()) {
      out.cells.push_back(*cell.body);
    } else {
      out.dropped.push_back("site " + std::to_string(i) + ": cell misses the clip box");
    }
  }
  return out;
}

PartitionReport verifyPartitionInequality(const ConvexBody& K, const ConvexBody& C, const PartitionFamily& partition,
                                          int m, double tol, bool allowUncertified) {
  requireSameDimension(K, C);
  requireHalfspaces(K, "partition checks");
  PartitionReport out;
  out.m = m;
  out.certified = partition.provenance == Provenance::SuccessiveCuts || partition.provenance == Provenance::Voronoi;
  if (!out.certified && !allowUncertified) {
    throw Error(ErrorCode::UncertifiedPartition,
                "provenance '" + std::string(provenanceName(partition.provenance)) + "' is not a certified inductive family");
  }
  out.hypothesis = out.certified ? "certified inductive" : "hypothesis unverified";
  const ConvexBody gauge = centeredGauge(C);
  double widthTol = 0.0;
  for (std::size_t i = 0; i < partition.cells.size(); ++i) {
    const HalfspaceSet piece = intersectWith(K, partition.cells[i]);
    if (!piece.fullDimensional()) {
      out.droppedCells.push_back(static_cast<int>(i));
      continue;
    }
    const double r = successiveInradius(*piece.body, gauge, m, tol).rho;
    const WidthResult w = minimalRelativeWidth(*piece.body, gauge);
    widthTol += w.achievedTolerance;
    out.cellIndex.push_back(static_cast<int>(i));
    out.cellInradius.push_back(r);
    out.cellWidth.push_back(w.value);
    out.inradiusSum += r;
    out.widthSum += w.value;
  }
  out.bodyInradius = successiveInradius(K, gauge, m, tol).rho;
  const WidthResult wK = minimalRelativeWidth(K, gauge);
  out.bodyWidth = wK.value;
  out.deficit = out.inradiusSum - out.bodyInradius;
  out.widthDeficit = out.widthSum - out.bodyWidth;
  const double n = static_cast<double>(out.cellIndex.size());
  out.tolerance = (n + 1) * tol;
  const double widthThreshold = out.tolerance + widthTol + wK.achievedTolerance;
  out.violation = out.deficit < -out.tolerance || out.widthDeficit < -widthThreshold;
  return out;
}

CutTree randomCutTree(const ConvexBody& K, int n, std::uint64_t seed) {
  requireHalfspaces(K, "cutting");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be a positive integer");
  Rng rng(seed);
  CutTree root = CutTree::leaf();
  // Leaves stay addressable because each children vector is built once with
  // two entries and never resized.
  std::vector<CutTree*> leaves{&root};
  std::vector<ConvexBody> regions{K};
  for (int k = 1; k < n; ++k) {
    bool done = false;
    for (int attempt = 0; attempt < 100 && !done; ++attempt) {
      const int pick = rng.index(static_cast<int>(regions.size()));
      const Vector u = rng.direction(K.dim());
      const double lo = -detail::supportAlong(regions[pick], -u);
      const double hi = detail::supportAlong(regions[pick], u);
      const double margin = 1e-3 * (hi - lo);
      const Hyperplane h{Direction(u), rng.uniform(lo + margin, hi - margin)};
      auto parts = split(regions[pick], h);
      if (!parts) continue;
      CutTree* leaf = leaves[pick];
      *leaf = CutTree::node(h, CutTree::leaf(), CutTree::leaf());
      leaves[pick] = &leaf->children[0];
      leaves.push_back(&leaf->children[1]);
      regions[pick] = std::move(parts->first);
      regions.push_back(std::move(parts->second));
      done = true;
    }
    if (!done) throw Error(ErrorCode::GenerationFailed, "no admissible random cut in 100 attempts");
  }
  return root;
}

ConwayReport verifyConwayTheorem(const ConvexBody& K, const ConvexBody& C, int n, int m, int trials,
                                 std::uint64_t seed, double tol, int threads) {
  requireSameDimension(K, C);
  if (trials < 0) throw Error(ErrorCode::InvalidArgument, "trials must be non-negative");
  const ConvexBody gauge = centeredGauge(C);
  const double inner = std::min(tol, 1e-9);

  ConwayReport out;
  out.n = n;
  out.m = m;
  out.tolerance = tol;
  out.bound = successiveInradius(K, gauge, m * n, inner).rho;
  out.optimal = optimalConwayCuts(K, gauge, n, m, inner);
  out.optimalGreatest = greatestPieceInradius(applyCutTree(K, out.optimal.tree), gauge, m, inner).value;
  out.attainmentGap = out.optimalGreatest - out.bound;
  out.attainmentViolated = std::abs(out.attainmentGap) > tol;

  out.trials.resize(static_cast<std::size_t>(trials));
  parallelFor(trials, threads, [&](int i) {
    ConwayTrial& t = out.trials[static_cast<std::size_t>(i)];
    t.seed = trialSeed(seed, static_cast<std::uint64_t>(i));
    t.tree = randomCutTree(K, n, t.seed);
    t.greatest = greatestPieceInradius(applyCutTree(K, t.tree), gauge, m, inner).value;
    t.margin = t.greatest - out.bound;
  });
  out.worstMargin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const double margin = out.trials[static_cast<std::size_t>(i)].margin;
    if (margin < out.worstMargin) {
      out.worstMargin = margin;
      out.worstTrial = i;
    }
    if (margin < -tol) out.violations.push_back(i);
  }
  if (trials == 0) out.worstMargin = out.attainmentGap;
  return out;
}

}  // namespace plank
