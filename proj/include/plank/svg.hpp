#pragma once

#include "plank/convex_body.hpp"
#include "plank/planks.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plank {

/// Layers of a planar figure, drawn bottom to top in field order.
struct SvgScene {
  explicit SvgScene(ConvexBody b) : body(std::move(b)) {}

  ConvexBody body;
  std::vector<Matrix> cells;      ///< CCW polygons (Voronoi cells, pieces)
  std::optional<Matrix> erosion;  ///< CCW polygon of an inner parallel body
  PlankFamily planks;
  std::vector<Hyperplane> cuts;
  std::vector<Vector> points;     ///< witnesses, sites, packing centers
};

struct SvgOptions {
  int size = 480;        ///< canvas edge in pixels
  double padding = 0.1;  ///< fraction of the body extent added on each side
};

/// SVG 1.1 document. Coordinates are printed with 12 significant digits, so
/// equal inputs give byte-identical output. Throws DimensionMismatch unless
/// the body is planar.
std::string renderSvg(const SvgScene& scene, const SvgOptions& options = {});

}  // namespace plank
