#include "plank/geometry.hpp"

#include "plank/errors.hpp"
#include "plank/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plank {

using Index = Eigen::Index;

namespace {

double supportRaw(const ConvexBody& body, const Vector& u) {
  if (body.isBall()) return body.center().dot(u) + body.radius() * u.norm();
  if (body.hasVertices()) return (body.vertexMatrix() * u).maxCoeff();
  return lpSupportValue(body.normals(), body.offsets(), u);
}

double widthRaw(const ConvexBody& body, const Vector& u) {
  if (body.isBall()) return 2.0 * body.radius() * u.norm();
  if (body.hasVertices()) {
    const Vector s = body.vertexMatrix() * u;
    return s.maxCoeff() - s.minCoeff();
  }
  return supportRaw(body, u) + supportRaw(body, -u);
}

double extentOf(const ConvexBody& body) { return std::max(body.scale(), 1e-300); }

// Radius of a ball around some center containing the body.
double circumradiusBound(const ConvexBody& body) {
  if (body.isBall()) return body.radius();
  if (body.hasVertices()) {
    const Matrix& v = body.vertexMatrix();
    const Vector mean = v.colwise().mean().transpose();
    return (v.rowwise() - mean.transpose()).rowwise().norm().maxCoeff();
  }
  return std::sqrt(static_cast<double>(body.dim())) * body.scale();
}

double inballRadius(const ConvexBody& body) {
  if (body.isBall()) return body.radius();
  if (body.hasHalfspaces()) return chebyshevBall(body.normals(), body.offsets()).radius;
  return 0.0;
}

void checkDirection(const ConvexBody& body, const Direction& u) {
  if (u.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "direction and body differ in dimension");
}

// Area over perimeter is within a constant factor of the minimal width.
double perimeter(const Matrix& polygon) {
  double p = 0.0;
  for (Index i = 0; i < polygon.rows(); ++i) p += (polygon.row((i + 1) % polygon.rows()) - polygon.row(i)).norm();
  return p;
}

HalfspaceSet classify2d(Matrix normals, Vector offsets, Matrix polygon, double extent, bool prune) {
  HalfspaceSet out;
  const double eps = 1e-12 * extent;
  for (Index r = 0; r < normals.rows() && polygon.rows() > 0; ++r)
    polygon = detail::clipPolygon(polygon, normals.row(r).transpose(), offsets[r], eps);
  polygon = detail::cleanPolygon(polygon, eps);
  if (polygon.rows() == 0) {
    out.status = SetStatus::Empty;
  } else if (polygon.rows() < 3 || detail::polygonArea(polygon) <= 1e-13 * extent * perimeter(polygon)) {
    out.status = SetStatus::LowerDimensional;
  } else {
    out.status = SetStatus::FullDimensional;
  }
  if (out.status == SetStatus::FullDimensional) {
    Matrix keptA(normals.rows(), 2);
    Vector keptB(normals.rows());
    Index kept = 0;
    for (Index r = 0; r < normals.rows(); ++r) {
      if (prune) {
        const Vector slack = (polygon * normals.row(r).transpose()).array() - offsets[r];
        const Index tight = (slack.array().abs() <= 1e-9 * std::max(1.0, extent)).count();
        if (tight < 2) continue;
        bool duplicate = false;
        for (Index q = 0; q < kept && !duplicate; ++q) {
          duplicate = (keptA.row(q) - normals.row(r)).cwiseAbs().maxCoeff() <= 1e-12 &&
                      std::abs(keptB[q] - offsets[r]) <= 1e-12 * std::max(1.0, extent);
        }
        if (duplicate) continue;
      }
      keptA.row(kept) = normals.row(r);
      keptB[kept] = offsets[r];
      ++kept;
    }
    keptA.conservativeResize(kept, 2);
    keptB.conservativeResize(kept);
    out.body = ConvexBody::trustedHalfspaces(keptA, keptB, polygon);
  }
  out.normals = std::move(normals);
  out.offsets = std::move(offsets);
  return out;
}

HalfspaceSet classifyNd(Matrix normals, Vector offsets, double extent, bool prune) {
  HalfspaceSet out;
  const ChebyshevBall cb = chebyshevBall(normals, offsets);
  const double eps = 1e-10 * std::max(1.0, extent);
  if (cb.radius > eps) {
    out.status = SetStatus::FullDimensional;
  } else if (cb.radius >= -eps) {
    out.status = SetStatus::LowerDimensional;
  } else {
    out.status = SetStatus::Empty;
  }
  if (out.status == SetStatus::FullDimensional) {
    Matrix A = normals;
    Vector b = offsets;
    if (prune) {
      Index r = 0;
      while (r < A.rows()) {
        Matrix others(A.rows() - 1, A.cols());
        Vector ob(A.rows() - 1);
        for (Index q = 0, w = 0; q < A.rows(); ++q) {
          if (q == r) continue;
          others.row(w) = A.row(q);
          ob[w++] = b[q];
        }
        const LpResult lp = maximize(others, ob, A.row(r).transpose());
        if (lp.status == LpStatus::Optimal && lp.value <= b[r] + eps) {
          A = others;
          b = ob;
        } else {
          ++r;
        }
      }
    }
    Matrix vertices;
    if (auto v = detail::enumerateVerticesBruteForce(A, b, eps)) vertices = *v;
    out.body = ConvexBody::trustedHalfspaces(A, b, vertices);
  }
  out.normals = std::move(normals);
  out.offsets = std::move(offsets);
  return out;
}

}  // namespace

namespace detail {
double supportAlong(const ConvexBody& body, const Vector& u) { return supportRaw(body, u); }
double widthAlong(const ConvexBody& body, const Vector& u) { return widthRaw(body, u); }
double circumradiusBound(const ConvexBody& body) { return plank::circumradiusBound(body); }
}  // namespace detail

void requireSameDimension(const ConvexBody& a, const ConvexBody& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "bodies of dimension " << a.dim() << " and " << b.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

double lpSupportValue(const Matrix& normals, const Vector& offsets, const Vector& u) {
  const LpResult r = maximize(normals, offsets, u);
  if (r.status == LpStatus::Unbounded) throw Error(ErrorCode::UnboundedBody, "support program is unbounded");
  if (r.status == LpStatus::Infeasible) throw Error(ErrorCode::InvalidBody, "support program is infeasible");
  return r.value;
}

double supportValue(const ConvexBody& body, const Direction& u) {
  checkDirection(body, u);
  return supportRaw(body, u.vector());
}

Vector supportPoint(const ConvexBody& body, const Direction& u) {
  checkDirection(body, u);
  if (body.isBall()) return body.center() + body.radius() * u.vector();
  if (body.hasVertices()) {
    Index arg = 0;
    (body.vertexMatrix() * u.vector()).maxCoeff(&arg);
    return body.vertexMatrix().row(arg).transpose();
  }
  const LpResult r = maximize(body.normals(), body.offsets(), u.vector());
  if (r.status != LpStatus::Optimal) throw Error(ErrorCode::UnboundedBody, "support program has no optimum");
  return r.x;
}

double widthParallel(const ConvexBody& body, const Direction& u) {
  checkDirection(body, u);
  return widthRaw(body, u.vector());
}

double relativeWidthParallel(const ConvexBody& K, const ConvexBody& C, const Direction& u) {
  requireSameDimension(K, C);
  checkDirection(K, u);
  return widthRaw(K, u.vector()) / widthRaw(C, u.vector());
}

std::vector<Vector> widthBreakpoints(const ConvexBody& body) {
  std::vector<Vector> out;
  if (body.isBall()) return out;
  if (body.dim() == 2 && body.hasVertices()) {
    const Matrix& v = body.vertexMatrix();
    const Index n = v.rows();
    for (Index i = 0; i < n; ++i) {
      const Eigen::RowVector2d e = v.row((i + 1) % n) - v.row(i);
      out.push_back(Vector{{e.y(), -e.x()}}.normalized());
    }
    return out;
  }
  if (body.hasHalfspaces()) {
    for (Index r = 0; r < body.normals().rows(); ++r) out.push_back(body.normals().row(r).transpose());
  }
  return out;
}

WidthResult minimalRelativeWidth(const ConvexBody& K, const ConvexBody& C, const DirectionSearchOptions& options) {
  requireSameDimension(K, C);
  std::vector<Vector> breaks = widthBreakpoints(K);
  for (auto& v : widthBreakpoints(C)) breaks.push_back(std::move(v));
  const bool refine = K.isBall();
  double lipschitz = 0.0;
  if (K.dim() > 2) {
    const double rK = circumradiusBound(K);
    const double rC = circumradiusBound(C);
    const double inC = std::max(inballRadius(C), 1e-12 * extentOf(C));
    const double ratioMax = rK / inC;
    lipschitz = (2.0 * rK + ratioMax * 2.0 * rC) / (2.0 * inC);
  }
  const auto f = [&](const Vector& u) { return widthRaw(K, u) / widthRaw(C, u); };
  const DirectionMinimum m = minimizeOverDirections(K.dim(), f, breaks, refine, lipschitz, options);
  return {m.value, Direction(m.direction), m.achievedTolerance};
}

WidthResult minimalWidth(const ConvexBody& K, const DirectionSearchOptions& options) {
  const WidthResult r = minimalRelativeWidth(K, ConvexBody::ball(Vector::Zero(K.dim()), 1.0), options);
  return {2.0 * r.value, r.direction, 2.0 * r.achievedTolerance};
}

CInradius cInradius(const ConvexBody& K, const ConvexBody& C) {
  requireSameDimension(K, C);
  if (!K.hasHalfspaces())
    throw Error(ErrorCode::RepresentationUnavailable, "C-inradius needs K in halfspace form");
  const Matrix& A = K.normals();
  const Index d = A.cols();
  Matrix ext(A.rows(), d + 1);
  ext.leftCols(d) = A;
  for (Index r = 0; r < A.rows(); ++r) ext(r, d) = supportRaw(C, A.row(r).transpose());
  Vector c = Vector::Zero(d + 1);
  c[d] = 1.0;
  const LpResult lp = maximize(ext, K.offsets(), c);
  if (lp.status != LpStatus::Optimal || !(lp.x[d] > 0))
    throw Error(ErrorCode::InvalidBody, "C-inradius program has no positive optimum");
  return {lp.x[d], lp.x.head(d)};
}

Vector interiorPoint(const ConvexBody& body) {
  if (body.isBall()) return body.center();
  if (body.hasHalfspaces()) return chebyshevBall(body.normals(), body.offsets()).center;
  return body.vertexMatrix().colwise().mean().transpose();
}

bool originInInterior(const ConvexBody& body, double margin) {
  const double m = margin * std::max(1.0, body.scale());
  if (body.isBall()) return body.center().norm() < body.radius() - m;
  if (body.hasHalfspaces()) return body.offsets().minCoeff() > m;
  throw Error(ErrorCode::RepresentationUnavailable, "origin test needs a halfspace form");
}

const ConvexBody& HalfspaceSet::value() const {
  if (!body) {
    std::ostringstream os;
    os << (status == SetStatus::Empty ? "set is empty" : "set has empty interior") << "; offsets:";
    for (Index i = 0; i < offsets.size(); ++i) os << ' ' << offsets[i];
    throw Error(ErrorCode::EmptyResult, os.str());
  }
  return *body;
}

HalfspaceSet erode(const ConvexBody& K, const ConvexBody& C, double rho) {
  requireSameDimension(K, C);
  if (!(rho > 0) || !std::isfinite(rho)) throw Error(ErrorCode::InvalidArgument, "erosion radius must be positive");
  if (!originInInterior(C)) throw Error(ErrorCode::OriginNotInterior, "erosion needs the origin inside C");
  const Matrix& A = K.normals();
  Vector b = K.offsets();
  for (Index r = 0; r < A.rows(); ++r) b[r] -= rho * supportRaw(C, A.row(r).transpose());
  if (K.dim() == 2) return classify2d(A, std::move(b), K.vertexMatrix(), extentOf(K), false);
  return classifyNd(A, std::move(b), extentOf(K), false);
}

HalfspaceSet intersectHalfspaces(const Matrix& normalsIn, const Vector& offsetsIn, const Matrix* hint) {
  Matrix A = normalsIn;
  Vector b = offsetsIn;
  for (Index r = 0; r < A.rows(); ++r) {
    const double n = A.row(r).norm();
    if (n <= 1e-300) throw Error(ErrorCode::InvalidArgument, "halfspace with zero normal");
    A.row(r) /= n;
    b[r] /= n;
  }
  const Index d = A.cols();
  if (d == 2) {
    Matrix start;
    double extent = 1.0;
    if (hint != nullptr && hint->rows() >= 3) {
      start = *hint;
      extent = std::max(hint->cwiseAbs().maxCoeff(), 1e-300);
    } else {
      double lo[2];
      double hi[2];
      for (int j = 0; j < 2; ++j) {
        Vector c = Vector::Zero(2);
        c[j] = 1.0;
        const LpResult up = maximize(A, b, c);
        const LpResult down = maximize(A, b, -c);
        if (up.status == LpStatus::Infeasible || down.status == LpStatus::Infeasible) {
          HalfspaceSet empty;
          empty.normals = A;
          empty.offsets = b;
          empty.status = SetStatus::Empty;
          return empty;
        }
        if (up.status == LpStatus::Unbounded || down.status == LpStatus::Unbounded)
          throw Error(ErrorCode::UnboundedBody, "halfspace intersection is unbounded");
        hi[j] = up.value;
        lo[j] = -down.value;
      }
      extent = std::max({std::abs(lo[0]), std::abs(lo[1]), std::abs(hi[0]), std::abs(hi[1]), 1e-300});
      const double pad = 1e-3 * std::max(1.0, extent);
      start.resize(4, 2);
      start << lo[0] - pad, lo[1] - pad, hi[0] + pad, lo[1] - pad, hi[0] + pad, hi[1] + pad, lo[0] - pad, hi[1] + pad;
    }
    return classify2d(std::move(A), std::move(b), std::move(start), extent, true);
  }
  double extent = 1.0;
  for (Index j = 0; j < d; ++j) {
    Vector c = Vector::Zero(d);
    c[j] = 1.0;
    for (int s = 0; s < 2; ++s) {
      const LpResult r = maximize(A, b, s == 0 ? c : Vector(-c));
      if (r.status == LpStatus::Unbounded) throw Error(ErrorCode::UnboundedBody, "halfspace intersection is unbounded");
      if (r.status == LpStatus::Optimal) extent = std::max(extent, std::abs(r.value));
    }
  }
  return classifyNd(std::move(A), std::move(b), extent, true);
}

HalfspaceSet sliceWithHalfspace(const ConvexBody& K, const Hyperplane& H, Side side) {
  if (H.normal.dim() != K.dim()) throw Error(ErrorCode::DimensionMismatch, "cut and body differ in dimension");
  const Matrix& A = K.normals();
  Matrix rows(A.rows() + 1, A.cols());
  Vector rhs(A.rows() + 1);
  rows.topRows(A.rows()) = A;
  rhs.head(A.rows()) = K.offsets();
  const double sign = side == Side::Below ? 1.0 : -1.0;
  rows.row(A.rows()) = sign * H.normal.vector().transpose();
  rhs[A.rows()] = sign * H.offset;
  if (K.dim() == 2) return intersectHalfspaces(rows, rhs, &K.vertexMatrix());
  return intersectHalfspaces(rows, rhs, nullptr);
}

Matrix convexHull2D(const Matrix& points) {
  if (points.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "planar hull needs 2D points");
  const double extent = std::max(1.0, points.size() > 0 ? points.cwiseAbs().maxCoeff() : 0.0);
  const Matrix hull = detail::hullPolygon(points, 1e-12 * extent);
  if (hull.rows() < 3 || detail::polygonArea(hull) <= 1e-12 * extent * extent)
    throw Error(ErrorCode::DegenerateHull, "points span no area");
  return hull;
}

Matrix enumerateVertices2D(const Matrix& normals, const Vector& offsets) {
  if (normals.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "planar enumeration needs 2D normals");
  const HalfspaceSet set = intersectHalfspaces(normals, offsets, nullptr);
  if (!set.fullDimensional()) throw Error(ErrorCode::DegenerateHull, "halfspace system has empty interior");
  return set.body->vertexMatrix();
}

}  // namespace plank
