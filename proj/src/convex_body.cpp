#include "plank/convex_body.hpp"

#include "plank/errors.hpp"
#include "plank/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace plank {

using Index = Eigen::Index;

namespace {

constexpr int kMaxDim = 8;

void checkDim(int d) {
  if (d < 2 || d > kMaxDim) {
    std::ostringstream os;
    os << "dimension " << d << " outside the supported range [2, " << kMaxDim << "]";
    throw Error(ErrorCode::InvalidBody, os.str());
  }
}

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > 100000000L) return r;
  }
  return r;
}

template <typename Fn>
void forEachCombination(int n, int k, Fn&& fn) {
  if (k > n || k <= 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

bool nearDuplicateRow(const Matrix& rows, Index count, const Vector& x, double eps) {
  for (Index r = 0; r < count; ++r) {
    if ((rows.row(r).transpose() - x).cwiseAbs().maxCoeff() <= eps) return true;
  }
  return false;
}

// Normalizes rows to unit Euclidean norm.
void normalizeHalfspaces(Matrix& normals, Vector& offsets) {
  for (Index r = 0; r < normals.rows(); ++r) {
    const double n = normals.row(r).norm();
    if (!std::isfinite(n) || n <= 1e-300) throw Error(ErrorCode::InvalidBody, "halfspace with zero normal");
    // Rows already unit to rounding are kept bit for bit so reloading is idempotent.
    if (std::abs(n - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) continue;
    normals.row(r) /= n;
    offsets[r] /= n;
  }
}

// Coordinate bounds via 2d linear programs.
Eigen::Matrix<double, Eigen::Dynamic, 2> coordinateBounds(const Matrix& A, const Vector& b) {
  const Index d = A.cols();
  Eigen::Matrix<double, Eigen::Dynamic, 2> bounds(d, 2);
  for (Index j = 0; j < d; ++j) {
    for (int s = 0; s < 2; ++s) {
      Vector c = Vector::Zero(d);
      c[j] = s == 0 ? -1.0 : 1.0;
      const LpResult r = maximize(A, b, c);
      if (r.status == LpStatus::Infeasible) throw Error(ErrorCode::InvalidBody, "halfspace system is infeasible");
      if (r.status == LpStatus::Unbounded) throw Error(ErrorCode::UnboundedBody, "halfspace system is unbounded");
      bounds(j, s) = s == 0 ? -r.value : r.value;
    }
  }
  return bounds;
}

}  // namespace

namespace detail {

Matrix clipPolygon(const Matrix& polygon, const Vector& a, double b, double eps) {
  const Index n = polygon.rows();
  std::vector<Eigen::RowVector2d> out;
  out.reserve(static_cast<std::size_t>(n) + 2);
  for (Index i = 0; i < n; ++i) {
    const Eigen::RowVector2d p = polygon.row(i);
    const Eigen::RowVector2d q = polygon.row((i + 1) % n);
    const double dp = p.dot(a.transpose()) - b;
    const double dq = q.dot(a.transpose()) - b;
    if (dp <= eps) out.push_back(p);
    if ((dp < -eps && dq > eps) || (dp > eps && dq < -eps)) {
      const double t = dp / (dp - dq);
      out.push_back(p + t * (q - p));
    }
  }
  Matrix result(static_cast<Index>(out.size()), 2);
  for (std::size_t i = 0; i < out.size(); ++i) result.row(static_cast<Index>(i)) = out[i];
  return result;
}

double polygonArea(const Matrix& polygon) {
  const Index n = polygon.rows();
  if (n < 3) return 0.0;
  // Relative to the first vertex so tiny polygons far from the origin keep
  // their digits.
  const Eigen::RowVector2d o = polygon.row(0);
  double twice = 0.0;
  for (Index i = 1; i + 1 < n; ++i) {
    const Eigen::RowVector2d a = polygon.row(i) - o;
    const Eigen::RowVector2d b = polygon.row(i + 1) - o;
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

Matrix cleanPolygon(const Matrix& polygon, double eps) {
  std::vector<Eigen::RowVector2d> pts;
  for (Index i = 0; i < polygon.rows(); ++i) pts.emplace_back(polygon.row(i));
  bool changed = true;
  while (changed && pts.size() >= 2) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() >= 2; ++i) {
      const std::size_t j = (i + 1) % pts.size();
      if ((pts[i] - pts[j]).cwiseAbs().maxCoeff() <= eps) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
    if (changed || pts.size() < 3) continue;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& prev = pts[(i + pts.size() - 1) % pts.size()];
      const auto& cur = pts[i];
      const auto& next = pts[(i + 1) % pts.size()];
      const Eigen::RowVector2d e1 = cur - prev;
      const Eigen::RowVector2d e2 = next - cur;
      const double cross = e1.x() * e2.y() - e1.y() * e2.x();
      if (std::abs(cross) <= eps * (e1.norm() + e2.norm())) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  Matrix result(static_cast<Index>(pts.size()), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) result.row(static_cast<Index>(i)) = pts[i];
  return result;
}

Matrix hullPolygon(const Matrix& points, double eps) {
  std::vector<Eigen::RowVector2d> pts;
  for (Index i = 0; i < points.rows(); ++i) pts.emplace_back(points.row(i));
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  const double extent = std::max(1.0, points.cwiseAbs().maxCoeff());
  auto cross = [](const Eigen::RowVector2d& o, const Eigen::RowVector2d& a, const Eigen::RowVector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::RowVector2d> chain(2 * pts.size() + 1);
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(chain[k - 2], chain[k - 1], p) <= eps * extent) --k;
    chain[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= t && cross(chain[k - 2], chain[k - 1], p) <= eps * extent) --k;
    chain[k++] = p;
  }
  chain.resize(k > 0 ? k - 1 : 0);
  Matrix hull(static_cast<Index>(chain.size()), 2);
  for (std::size_t i = 0; i < chain.size(); ++i) hull.row(static_cast<Index>(i)) = chain[i];
  return cleanPolygon(hull, eps);
}

void polygonHalfspaces(const Matrix& polygon, Matrix& normals, Vector& offsets) {
  const Index n = polygon.rows();
  normals.resize(n, 2);
  offsets.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Eigen::Vector2d p = polygon.row(i).transpose();
    const Eigen::Vector2d q = polygon.row((i + 1) % n).transpose();
    Eigen::Vector2d normal(q.y() - p.y(), p.x() - q.x());
    normal.normalize();
    normals.row(i) = normal.transpose();
    offsets[i] = normal.dot(p);
  }
}

std::optional<Matrix> enumerateVerticesBruteForce(const Matrix& A, const Vector& b, double eps, long maxSubsets) {
  const int m = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());
  if (binomial(m, d) > maxSubsets) return std::nullopt;
  Matrix found(16, d);
  Index count = 0;
  Matrix sub(d, d);
  Vector rhs(d);
  forEachCombination(m, d, [&](const std::vector<int>& idx) {
    for (int r = 0; r < d; ++r) {
      sub.row(r) = A.row(idx[static_cast<std::size_t>(r)]);
      rhs[r] = b[idx[static_cast<std::size_t>(r)]];
    }
    Eigen::FullPivLU<Matrix> lu(sub);
    lu.setThreshold(1e-10);
    if (lu.rank() < d) return;
    const Vector x = lu.solve(rhs);
    if (!x.allFinite()) return;
    if (((A * x) - b).maxCoeff() > eps) return;
    if (nearDuplicateRow(found, count, x, 10 * eps)) return;
    if (count == found.rows()) found.conservativeResize(2 * count, d);
    found.row(count++) = x.transpose();
  });
  found.conservativeResize(count, d);
  return found;
}

std::optional<std::pair<Matrix, Vector>> facetsBruteForce(const Matrix& points, double eps, long maxSubsets) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (binomial(n, d) > maxSubsets) return std::nullopt;
  Matrix normals(8, d);
  Vector offsets(8);
  Index count = 0;
  Matrix diffs(d - 1, d);
  forEachCombination(n, d, [&](const std::vector<int>& idx) {
    const Vector p0 = points.row(idx[0]).transpose();
    for (int r = 1; r < d; ++r) diffs.row(r - 1) = points.row(idx[static_cast<std::size_t>(r)]) - p0.transpose();
    Eigen::FullPivLU<Matrix> lu(diffs);
    lu.setThreshold(1e-10);
    if (lu.rank() < d - 1) return;
    Vector normal = lu.kernel().col(0);
    normal.normalize();
    double offset = normal.dot(p0);
    const Vector s = points * normal - Vector::Constant(n, offset);
    if (s.maxCoeff() <= eps) {
      // already outward
    } else if (s.minCoeff() >= -eps) {
      normal = -normal;
      offset = -offset;
    } else {
      return;
    }
    for (Index r = 0; r < count; ++r) {
      if ((normals.row(r).transpose() - normal).cwiseAbs().maxCoeff() <= 1e-9 && std::abs(offsets[r] - offset) <= 1e-9)
        return;
    }
    if (count == normals.rows()) {
      normals.conservativeResize(2 * count, d);
      offsets.conservativeResize(2 * count);
    }
    normals.row(count) = normal.transpose();
    offsets[count] = offset;
    ++count;
  });
  normals.conservativeResize(count, d);
  offsets.conservativeResize(count);
  return std::make_pair(normals, offsets);
}

}  // namespace detail

ConvexBody ConvexBody::halfspaces(const Matrix& normalsIn, const Vector& offsetsIn) {
  ConvexBody body;
  body.kind_ = Kind::Halfspaces;
  body.dim_ = static_cast<int>(normalsIn.cols());
  checkDim(body.dim_);
  if (normalsIn.rows() != offsetsIn.size()) throw Error(ErrorCode::InvalidBody, "normals and offsets differ in length");
  if (normalsIn.rows() < body.dim_ + 1) throw Error(ErrorCode::InvalidBody, "too few halfspaces to bound a body");
  if (!normalsIn.allFinite() || !offsetsIn.allFinite()) throw Error(ErrorCode::InvalidBody, "non-finite halfspace data");
  Matrix A = normalsIn;
  Vector b = offsetsIn;
  normalizeHalfspaces(A, b);

  const auto bounds = coordinateBounds(A, b);
  const double extent = std::max(1.0, bounds.cwiseAbs().maxCoeff());
  if (body.dim_ == 2) {
    Matrix poly(4, 2);
    const double pad = 1e-3 * extent;
    poly << bounds(0, 0) - pad, bounds(1, 0) - pad, bounds(0, 1) + pad, bounds(1, 0) - pad, bounds(0, 1) + pad,
        bounds(1, 1) + pad, bounds(0, 0) - pad, bounds(1, 1) + pad;
    const double eps = 1e-12 * extent;
    for (Index r = 0; r < A.rows(); ++r) poly = detail::clipPolygon(poly, A.row(r).transpose(), b[r], eps);
    poly = detail::cleanPolygon(poly, eps);
    if (poly.rows() < 3 || detail::polygonArea(poly) <= 1e-12 * extent * extent)
      throw Error(ErrorCode::InvalidBody, "halfspace system has empty interior");
    body.vertices_ = poly;
  } else {
    const ChebyshevBall ball = chebyshevBall(A, b);
    if (ball.radius <= 1e-10 * extent) throw Error(ErrorCode::InvalidBody, "halfspace system has empty interior");
    if (auto v = detail::enumerateVerticesBruteForce(A, b, 1e-10 * extent)) body.vertices_ = *v;
  }
  body.normals_ = std::move(A);
  body.offsets_ = std::move(b);
  body.computeScale();
  if (!body.hasVertices()) body.scale_ = bounds.cwiseAbs().maxCoeff();
  return body;
}

ConvexBody ConvexBody::vertices(const Matrix& points) {
  ConvexBody body;
  body.kind_ = Kind::Vertices;
  body.dim_ = static_cast<int>(points.cols());
  checkDim(body.dim_);
  if (points.rows() < body.dim_ + 1) throw Error(ErrorCode::InvalidBody, "too few points for a full-dimensional hull");
  if (!points.allFinite()) throw Error(ErrorCode::InvalidBody, "non-finite vertex data");
  const double extent = std::max(1.0, points.cwiseAbs().maxCoeff());
  if (body.dim_ == 2) {
    const double eps = 1e-12 * extent;
    const Matrix hull = detail::hullPolygon(points, eps);
    if (hull.rows() < 3 || detail::polygonArea(hull) <= 1e-12 * extent * extent)
      throw Error(ErrorCode::InvalidBody, "points span no area (degenerate hull)");
    body.vertices_ = hull;
    detail::polygonHalfspaces(hull, body.normals_, body.offsets_);
  } else {
    const Vector mean = points.colwise().mean().transpose();
    Eigen::JacobiSVD<Matrix> svd(points.rowwise() - mean.transpose());
    const Vector sv = svd.singularValues();
    if (sv[sv.size() - 1] <= 1e-10 * extent) throw Error(ErrorCode::InvalidBody, "points are not full-dimensional");
    body.vertices_ = points;
    if (auto facets = detail::facetsBruteForce(points, 1e-10 * extent)) {
      body.normals_ = facets->first;
      body.offsets_ = facets->second;
      // Keep only extreme input points (tight on at least d facets). Input
      // coordinates are kept verbatim so a reload reproduces them bit for bit.
      const double eps = 1e-9 * extent;
      std::vector<Index> keep;
      for (Index i = 0; i < points.rows(); ++i) {
        const Vector slack = body.offsets_ - body.normals_ * points.row(i).transpose();
        if ((slack.array().abs() <= eps).count() < body.dim_) continue;
        bool duplicate = false;
        for (Index k : keep) duplicate = duplicate || (points.row(k) - points.row(i)).cwiseAbs().maxCoeff() <= eps;
        if (!duplicate) keep.push_back(i);
      }
      if (static_cast<int>(keep.size()) >= body.dim_ + 1) body.vertices_ = points(keep, Eigen::all);
    }
  }
  body.computeScale();
  return body;
}

ConvexBody ConvexBody::ball(const Vector& center, double radius) {
  ConvexBody body;
  body.kind_ = Kind::Ball;
  body.dim_ = static_cast<int>(center.size());
  checkDim(body.dim_);
  if (!(radius > 0) || !std::isfinite(radius) || !center.allFinite())
    throw Error(ErrorCode::InvalidBody, "ball needs a finite center and a positive radius");
  body.center_ = center;
  body.radius_ = radius;
  body.computeScale();
  return body;
}

ConvexBody ConvexBody::box(const Vector& lower, const Vector& upper) {
  const Index d = lower.size();
  if (upper.size() != d) throw Error(ErrorCode::DimensionMismatch, "box corners differ in dimension");
  Matrix A = Matrix::Zero(2 * d, d);
  Vector b(2 * d);
  for (Index j = 0; j < d; ++j) {
    if (!(lower[j] < upper[j])) throw Error(ErrorCode::InvalidBody, "box has an empty side");
    A(2 * j, j) = 1.0;
    b[2 * j] = upper[j];
    A(2 * j + 1, j) = -1.0;
    b[2 * j + 1] = -lower[j];
  }
  if (d == 2) {
    Matrix v(4, 2);
    v << lower[0], lower[1], upper[0], lower[1], upper[0], upper[1], lower[0], upper[1];
    return trustedHalfspaces(A, b, v);
  }
  return halfspaces(A, b);
}

ConvexBody ConvexBody::trustedHalfspaces(Matrix normals, Vector offsets, Matrix vertexCache) {
  ConvexBody body;
  body.kind_ = Kind::Halfspaces;
  body.dim_ = static_cast<int>(normals.cols());
  body.normals_ = std::move(normals);
  body.offsets_ = std::move(offsets);
  body.vertices_ = std::move(vertexCache);
  body.computeScale();
  if (!body.hasVertices()) {
    double s = 0.0;
    for (Index j = 0; j < body.dim_; ++j) {
      for (int sign = -1; sign <= 1; sign += 2) {
        Vector c = Vector::Zero(body.dim_);
        c[j] = sign;
        const LpResult r = maximize(body.normals_, body.offsets_, c);
        if (r.status == LpStatus::Optimal) s = std::max(s, std::abs(r.value));
      }
    }
    body.scale_ = s;
  }
  return body;
}

const Matrix& ConvexBody::normals() const {
  if (!hasHalfspaces()) throw Error(ErrorCode::RepresentationUnavailable, "body has no halfspace representation");
  return normals_;
}

const Vector& ConvexBody::offsets() const {
  if (!hasHalfspaces()) throw Error(ErrorCode::RepresentationUnavailable, "body has no halfspace representation");
  return offsets_;
}

const Matrix& ConvexBody::vertexMatrix() const {
  if (!hasVertices()) throw Error(ErrorCode::RepresentationUnavailable, "body has no vertex representation");
  return vertices_;
}

void ConvexBody::computeScale() {
  if (kind_ == Kind::Ball) {
    scale_ = center_.cwiseAbs().maxCoeff() + radius_;
  } else if (hasVertices()) {
    scale_ = vertices_.cwiseAbs().maxCoeff();
  }
}

ConvexBody ConvexBody::translated(const Vector& t) const {
  if (t.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "translation has wrong dimension");
  ConvexBody out = *this;
  if (kind_ == Kind::Ball) out.center_ += t;
  if (hasHalfspaces()) out.offsets_ += normals_ * t;
  if (hasVertices()) out.vertices_.rowwise() += t.transpose();
  out.computeScale();
  if (!out.hasVertices() && kind_ != Kind::Ball) out.scale_ = scale_ + t.cwiseAbs().maxCoeff();
  return out;
}

ConvexBody ConvexBody::scaled(double factor) const {
  if (!(factor > 0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  ConvexBody out = *this;
  if (kind_ == Kind::Ball) {
    out.center_ *= factor;
    out.radius_ *= factor;
  }
  if (hasHalfspaces()) out.offsets_ *= factor;
  if (hasVertices()) out.vertices_ *= factor;
  out.scale_ = scale_ * factor;
  return out;
}

bool ConvexBody::contains(const Vector& x, double slack) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
  if (kind_ == Kind::Ball) return (x - center_).norm() <= radius_ + slack;
  return ((normals() * x) - offsets_).maxCoeff() <= slack;
}

}  // namespace plank
