#pragma once

#include "plank/types.hpp"

#include <optional>

namespace plank {

/// A compact convex set with non-empty interior in E^d, 2 <= d <= 8.
///
/// Three representations are accepted: an intersection of halfspaces
/// <a_i, x> <= b_i (canonical), the convex hull of a vertex list, or a
/// Euclidean ball. Every factory validates boundedness and full
/// dimensionality and throws InvalidBody / UnboundedBody otherwise.
///
/// Planar polygons always carry both forms: a counterclockwise vertex cycle
/// and the matching halfspace list. In d >= 3 the missing form is computed
/// by brute-force enumeration when the input is small enough.
class ConvexBody {
 public:
  enum class Kind { Halfspaces, Vertices, Ball };

  /// Normals need not be unit; rows are normalized together with offsets.
  static ConvexBody halfspaces(const Matrix& normals, const Vector& offsets);
  /// Points are rows.
  static ConvexBody vertices(const Matrix& points);
  static ConvexBody ball(const Vector& center, double radius);
  static ConvexBody box(const Vector& lower, const Vector& upper);

  /// Skips validation. The caller guarantees unit rows, boundedness and a
  /// non-empty interior; `vertexCache` may be empty when unknown.
  static ConvexBody trustedHalfspaces(Matrix normals, Vector offsets, Matrix vertexCache);

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }

  bool hasHalfspaces() const noexcept { return normals_.rows() > 0; }
  /// Throws RepresentationUnavailable when there is no halfspace form.
  const Matrix& normals() const;
  const Vector& offsets() const;

  bool hasVertices() const noexcept { return vertices_.rows() > 0; }
  /// Rows are vertices; counterclockwise in 2D.
  const Matrix& vertexMatrix() const;

  bool isBall() const noexcept { return kind_ == Kind::Ball; }
  const Vector& center() const { return center_; }
  double radius() const { return radius_; }

  /// Largest absolute coordinate of any point of the body.
  double scale() const noexcept { return scale_; }

  ConvexBody translated(const Vector& t) const;
  ConvexBody scaled(double factor) const;

  /// Membership with absolute slack.
  bool contains(const Vector& x, double slack = 1e-9) const;

 private:
  ConvexBody() = default;
  void computeScale();

  Kind kind_ = Kind::Halfspaces;
  int dim_ = 0;
  Matrix normals_;
  Vector offsets_;
  Matrix vertices_;
  Vector center_;
  double radius_ = 0.0;
  double scale_ = 0.0;
};

namespace detail {

// Polygon clipping and hull helpers shared by the 2D fast paths.

/// Clips a counterclockwise convex polygon by <a, x> <= b.
Matrix clipPolygon(const Matrix& polygon, const Vector& a, double b, double eps);
double polygonArea(const Matrix& polygon);
/// Drops consecutive duplicates and collinear vertices.
Matrix cleanPolygon(const Matrix& polygon, double eps);
/// Monotone-chain hull, counterclockwise, cleaned. May return fewer than
/// three vertices for degenerate input.
Matrix hullPolygon(const Matrix& points, double eps);
/// Outward unit normals and offsets of the edges of a CCW polygon.
void polygonHalfspaces(const Matrix& polygon, Matrix& normals, Vector& offsets);

/// All vertices of {x : A x <= b} by solving every d-subset of rows.
/// Returns std::nullopt when the subset count exceeds `maxSubsets`.
std::optional<Matrix> enumerateVerticesBruteForce(const Matrix& A, const Vector& b, double eps,
                                                  long maxSubsets = 400000);

/// Facets of conv(points) by testing every d-subset of points.
std::optional<std::pair<Matrix, Vector>> facetsBruteForce(const Matrix& points, double eps,
                                                          long maxSubsets = 400000);

}  // namespace detail

}  // namespace plank
