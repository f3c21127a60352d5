#include "plank/planks.hpp"

#include "plank/errors.hpp"
#include "plank/geometry.hpp"
#include "plank/inradius.hpp"
#include "plank/lp.hpp"
#include "plank/random.hpp"

#include <cmath>

namespace plank {

using Index = Eigen::Index;

namespace {

constexpr double kOutsideMargin = 1e-9;

void checkPlanks(const ConvexBody& K, const PlankFamily& planks) {
  if (planks.empty()) throw Error(ErrorCode::InvalidArgument, "plank family is empty");
  for (const Plank& p : planks) {
    if (p.normal().dim() != K.dim()) throw Error(ErrorCode::DimensionMismatch, "plank and body differ in dimension");
  }
}

bool outsideAll(const PlankFamily& planks, const Vector& x) {
  for (const Plank& p : planks) {
    const double t = p.normal().dot(x);
    if (t >= p.low() - kOutsideMargin && t <= p.high() + kOutsideMargin) return false;
  }
  return true;
}

// Depth-first search over outside sides with max-margin pruning.
class CellSearch {
 public:
  CellSearch(const ConvexBody& K, const PlankFamily& planks) : planks_(planks), d_(K.dim()) {
    const Matrix& A = K.normals();
    const Index k = A.rows();
    const Index n = static_cast<Index>(planks.size());
    rows_ = Matrix::Zero(k + n + 1, d_ + 1);
    rhs_ = Vector::Zero(k + n + 1);
    rows_.topLeftCorner(k, d_) = A;
    rhs_.head(k) = K.offsets();
    // s <= scale keeps the margin program bounded.
    rows_(k + n, d_) = 1.0;
    rhs_[k + n] = std::max(1.0, K.scale());
    bodyRows_ = k;
    objective_ = Vector::Zero(d_ + 1);
    objective_[d_] = 1.0;
  }

  std::optional<Vector> run() { return visit(0); }
  long cells() const { return cells_; }

 private:
  std::optional<Vector> visit(Index depth) {
    const Index n = static_cast<Index>(planks_.size());
    for (int side = 0; side < 2; ++side) {
      const Plank& p = planks_[static_cast<std::size_t>(depth)];
      const Index r = bodyRows_ + depth;
      // below: <n,x> + s <= low ; above: -<n,x> + s <= -high
      const double sign = side == 0 ? 1.0 : -1.0;
      rows_.block(r, 0, 1, d_) = sign * p.normal().vector().transpose();
      rows_(r, d_) = 1.0;
      rhs_[r] = side == 0 ? p.low() : -p.high();
      const Index used = bodyRows_ + depth + 1;
      Matrix A(used + 1, d_ + 1);
      Vector b(used + 1);
      A.topRows(used) = rows_.topRows(used);
      A.row(used) = rows_.row(bodyRows_ + n);
      b.head(used) = rhs_.head(used);
      b[used] = rhs_[bodyRows_ + n];
      ++cells_;
      const LpResult lp = maximize(A, b, objective_);
      if (lp.status != LpStatus::Optimal || lp.value <= kOutsideMargin) continue;
      if (depth + 1 == n) return Vector(lp.x.head(d_));
      if (auto w = visit(depth + 1)) return w;
    }
    return std::nullopt;
  }

  const PlankFamily& planks_;
  Index d_;
  Index bodyRows_ = 0;
  Matrix rows_;
  Vector rhs_;
  Vector objective_;
  long cells_ = 0;
};

// Random point of K: a random convex combination of its vertices.
Vector samplePoint(const Matrix& vertices, Rng& rng) {
  Vector w(vertices.rows());
  for (Index i = 0; i < w.size(); ++i) {
    double u = 0.0;
    while (u <= 0.0) u = rng.uniform();
    w[i] = std::pow(-std::log(u), 2.0);
  }
  w /= w.sum();
  return vertices.transpose() * w;
}

CoverageVerdict sampleCoverage(const ConvexBody& K, const PlankFamily& planks, const CoverageOptions& options) {
  CoverageVerdict out;
  out.method = CoverageMethod::Sampling;
  if (!K.hasVertices()) throw Error(ErrorCode::RepresentationUnavailable, "sampling needs the vertex form of K");
  const Matrix& V = K.vertexMatrix();
  Rng rng(options.seed);
  const auto test = [&](const Vector& x) {
    ++out.cellsChecked;
    if (outsideAll(planks, x)) {
      out.covered = false;
      out.witness = x;
      return true;
    }
    return false;
  };
  for (Index i = 0; i < V.rows(); ++i) {
    if (test(V.row(i).transpose())) return out;
  }
  for (int s = 0; s < options.samples; ++s) {
    if (test(samplePoint(V, rng))) return out;
  }
  out.covered = true;
  out.certified = false;
  return out;
}

void requireCovering(const ConvexBody& K, const PlankFamily& planks) {
  const CoverageVerdict v = coversBody(K, planks);
  if (!v.covered) throw Error(ErrorCode::NotACovering, "the planks do not cover the body");
}

}  // namespace

std::string_view coverageMethodName(CoverageMethod m) {
  return m == CoverageMethod::CellEnumeration ? "cell-enumeration" : "sampling";
}

double plankRelativeWidth(const Plank& P, const ConvexBody& C) {
  if (P.normal().dim() != C.dim()) throw Error(ErrorCode::DimensionMismatch, "plank and gauge differ in dimension");
  return P.width() / widthParallel(C, P.normal());
}

Plank thickenHyperplane(const Hyperplane& H, const ConvexBody& C, double s) {
  if (H.normal.dim() != C.dim()) throw Error(ErrorCode::DimensionMismatch, "hyperplane and gauge differ in dimension");
  if (!(s >= 0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "thickness must be non-negative");
  if (!originInInterior(C)) throw Error(ErrorCode::OriginNotInterior, "thickening needs the origin inside C");
  const double up = supportValue(C, H.normal);
  const double down = supportValue(C, -H.normal);
  return Plank(H.normal, H.offset - s * up, H.offset + s * down);
}

CoverageVerdict coversBody(const ConvexBody& K, const PlankFamily& planks, const CoverageOptions& options) {
  checkPlanks(K, planks);
  const bool exact = options.mode == CoverageOptions::Mode::Exact ||
                     (options.mode == CoverageOptions::Mode::Auto && planks.size() <= 16);
  if (!exact) return sampleCoverage(K, planks, options);
  if (planks.size() > 16)
    throw Error(ErrorCode::TooManyHyperplanes, "exact coverage supports at most 16 planks");
  if (!K.hasHalfspaces()) throw Error(ErrorCode::RepresentationUnavailable, "exact coverage needs K in halfspace form");
  CellSearch search(K, planks);
  CoverageVerdict out;
  out.method = CoverageMethod::CellEnumeration;
  out.witness = search.run();
  out.covered = !out.witness.has_value();
  out.cellsChecked = search.cells();
  return out;
}

double bangDeficit(const ConvexBody& K, const PlankFamily& planks) {
  checkPlanks(K, planks);
  requireCovering(K, planks);
  double sum = 0.0;
  for (const Plank& p : planks) sum += p.width();
  return sum - minimalWidth(K).value;
}

AffineDeficit affineDeficit(const ConvexBody& K, const ConvexBody& C, const PlankFamily& planks, int m, double tol) {
  requireSameDimension(K, C);
  checkPlanks(K, planks);
  requireCovering(K, planks);
  AffineDeficit out;
  for (const Plank& p : planks) out.plankSum += plankRelativeWidth(p, C);
  out.bodyWidth = minimalRelativeWidth(K, C).value;
  out.deficit = out.plankSum - out.bodyWidth;
  if (m >= 1) {
    out.m = m;
    out.scaledInradius = m * successiveInradius(K, C, m, tol).rho;
    out.successiveDeficit = out.plankSum - out.scaledInradius;
  }
  return out;
}

TwoPlankReport twoPlankCheck(const ConvexBody& K, const ConvexBody& C, const Plank& P1, const Plank& P2) {
  requireSameDimension(K, C);
  const PlankFamily pair{P1, P2};
  checkPlanks(K, pair);
  requireCovering(K, pair);
  TwoPlankReport out;
  out.width1 = plankRelativeWidth(P1, C);
  out.width2 = plankRelativeWidth(P2, C);
  out.bodyWidth = minimalRelativeWidth(K, C).value;
  out.margin = out.width1 + out.width2 - out.bodyWidth;
  out.violation = out.margin < -1e-6;
  return out;
}

}  // namespace plank
