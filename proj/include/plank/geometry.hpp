#pragma once

#include "plank/convex_body.hpp"
#include "plank/direction_search.hpp"
#include "plank/types.hpp"

#include <optional>

namespace plank {

/// h_K(u) = max over K of <x, u>.
double supportValue(const ConvexBody& body, const Direction& u);
/// A maximizer of <x, u> over the body.
Vector supportPoint(const ConvexBody& body, const Direction& u);
/// Support value of {x : A x <= b} by linear programming. Throws
/// UnboundedBody when the program is unbounded.
double lpSupportValue(const Matrix& normals, const Vector& offsets, const Vector& u);

/// w(K, H): distance between the two supporting hyperplanes with normal u.
double widthParallel(const ConvexBody& body, const Direction& u);
/// w_C(K, H) = w(K, H) / w(C, H).
double relativeWidthParallel(const ConvexBody& K, const ConvexBody& C, const Direction& u);

/// w_C(K): the minimum of w_C(K, H) over all hyperplanes.
///
/// In the plane the ratio is evaluated at every edge normal of K and C. Between
/// consecutive normals both widths are sinusoids A cos(t - a) and the ratio of
/// two such sinusoids is monotone, so the breakpoints are exact whenever K is
/// a polygon; arcs are refined by golden section only when K is a disk. The
/// reported tolerance is 1e-9 in the plane and the sample-resolution bound in
/// higher dimensions.
WidthResult minimalRelativeWidth(const ConvexBody& K, const ConvexBody& C, const DirectionSearchOptions& options = {});
/// Minimal Euclidean width w(K).
WidthResult minimalWidth(const ConvexBody& K, const DirectionSearchOptions& options = {});

/// Edge/facet normals of a body (empty for balls); these are the points where
/// its width function stops being a single sinusoid.
std::vector<Vector> widthBreakpoints(const ConvexBody& body);

struct CInradius {
  double scale;       ///< largest lambda with t + lambda C inside K
  Vector translation; ///< a witness t
};
/// Largest homothetic copy of C (up to translation) inside K, via the linear
/// program max lambda s.t. <a_i, t> + lambda h_C(a_i) <= b_i.
CInradius cInradius(const ConvexBody& K, const ConvexBody& C);

/// A point in the interior of the body: the Chebyshev center for polytopes,
/// the center for balls.
Vector interiorPoint(const ConvexBody& body);
bool originInInterior(const ConvexBody& body, double margin = 1e-12);

enum class SetStatus { FullDimensional, LowerDimensional, Empty };

/// Result of an exact halfspace construction. `normals`/`offsets` are kept
/// without pruning so repeated erosions compose offset by offset.
struct HalfspaceSet {
  Matrix normals;
  Vector offsets;
  SetStatus status = SetStatus::Empty;
  std::optional<ConvexBody> body;

  bool fullDimensional() const { return status == SetStatus::FullDimensional; }
  /// Throws EmptyResult (with the offending offsets) unless full-dimensional.
  const ConvexBody& value() const;
};

/// Inner parallel body K_{-rho C} = {t : t + rho C inside K}. Requires the
/// origin in the interior of C and K in halfspace form. The i-th offset is
/// b_i - rho h_C(a_i); emptiness or loss of dimension is flagged in `status`.
HalfspaceSet erode(const ConvexBody& K, const ConvexBody& C, double rho);

enum class Side { Below, Above };

/// K intersected with <n, x> <= c (Below) or >= c (Above); redundant
/// constraints are pruned.
HalfspaceSet sliceWithHalfspace(const ConvexBody& K, const Hyperplane& H, Side side);

/// {x : A x <= b} with redundant rows pruned, classified by dimension.
/// `hint` (optional) is a polygon containing the set, used to start 2D
/// clipping.
HalfspaceSet intersectHalfspaces(const Matrix& normals, const Vector& offsets, const Matrix* hint = nullptr);

/// Counterclockwise convex hull without duplicate or collinear points.
/// Throws DegenerateHull when the points span no area.
Matrix convexHull2D(const Matrix& points);
/// Counterclockwise vertices of a bounded planar halfspace system.
Matrix enumerateVertices2D(const Matrix& normals, const Vector& offsets);

void requireSameDimension(const ConvexBody& a, const ConvexBody& b);

namespace detail {
// Unchecked variants taking a raw unit vector; used on hot paths.
double supportAlong(const ConvexBody& body, const Vector& u);
double widthAlong(const ConvexBody& body, const Vector& u);
double circumradiusBound(const ConvexBody& body);
}  // namespace detail

}  // namespace plank
