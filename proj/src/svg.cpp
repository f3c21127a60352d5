#include "plank/svg.hpp"

#include "plank/errors.hpp"

#include <algorithm>
#include <cstdio>

namespace plank {

using Index = Eigen::Index;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

class Canvas {
 public:
  // Square world window [minX, minX + side] x [maxY - side, maxY].
  Canvas(double minX, double maxY, double side, int size) : minX_(minX), maxY_(maxY), scale_(size / side), size_(size) {}

  double x(double wx) const { return (wx - minX_) * scale_; }
  double y(double wy) const { return (maxY_ - wy) * scale_; }
  double length(double w) const { return w * scale_; }

  std::string points(const Matrix& poly) const {
    std::string out;
    for (Index i = 0; i < poly.rows(); ++i) {
      if (i) out += ' ';
      out += num(x(poly(i, 0))) + "," + num(y(poly(i, 1)));
    }
    return out;
  }

  int size() const { return size_; }

 private:
  double minX_;
  double maxY_;
  double scale_;
  int size_;
};

Matrix rectangle(double x0, double y0, double x1, double y1) {
  Matrix r(4, 2);
  r << x0, y0, x1, y0, x1, y1, x0, y1;
  return r;
}

std::string polygon(const Canvas& c, const Matrix& poly, const char* style) {
  return "  <polygon points=\"" + c.points(poly) + "\" " + style + "/>\n";
}

}  // namespace

std::string renderSvg(const SvgScene& scene, const SvgOptions& options) {
  const ConvexBody& K = scene.body;
  if (K.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "plots are planar only");
  if (options.size <= 0) throw Error(ErrorCode::InvalidArgument, "canvas size must be positive");

  double lo[2];
  double hi[2];
  if (K.isBall()) {
    for (int j = 0; j < 2; ++j) {
      lo[j] = K.center()[j] - K.radius();
      hi[j] = K.center()[j] + K.radius();
    }
  } else {
    const Matrix& v = K.vertexMatrix();
    for (int j = 0; j < 2; ++j) {
      lo[j] = v.col(j).minCoeff();
      hi[j] = v.col(j).maxCoeff();
    }
  }
  const double extent = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-12});
  const double pad = options.padding * extent;
  const double side = extent + 2 * pad;
  const double cx = 0.5 * (lo[0] + hi[0]);
  const double cy = 0.5 * (lo[1] + hi[1]);
  const double x0 = cx - 0.5 * side;
  const double y0 = cy - 0.5 * side;
  const Canvas canvas(x0, y0 + side, side, options.size);
  const Matrix view = rectangle(x0, y0, x0 + side, y0 + side);
  const double eps = 1e-12 * side;

  std::string out;
  const std::string s = std::to_string(options.size);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + s + "\" height=\"" + s +
         "\" viewBox=\"0 0 " + s + " " + s + "\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + s + "\" height=\"" + s + "\" fill=\"white\"/>\n";

  out += " <g id=\"body\">\n";
  if (K.isBall()) {
    out += "  <circle cx=\"" + num(canvas.x(K.center()[0])) + "\" cy=\"" + num(canvas.y(K.center()[1])) + "\" r=\"" +
           num(canvas.length(K.radius())) + "\" fill=\"#dde8f4\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
  } else {
    out += polygon(canvas, K.vertexMatrix(), "fill=\"#dde8f4\" stroke=\"#1f4e79\" stroke-width=\"1.5\"");
  }
  out += " </g>\n";

  if (!scene.cells.empty()) {
    out += " <g id=\"cells\">\n";
    for (const Matrix& cell : scene.cells)
      out += polygon(canvas, cell, "fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"1\"");
    out += " </g>\n";
  }
  if (scene.erosion && scene.erosion->rows() >= 2) {
    out += " <g id=\"erosion\">\n";
    out += polygon(canvas, *scene.erosion, "fill=\"#f6d7a7\" fill-opacity=\"0.7\" stroke=\"#b45f06\" stroke-width=\"1\"");
    out += " </g>\n";
  }
  if (!scene.planks.empty()) {
    out += " <g id=\"planks\">\n";
    for (const Plank& p : scene.planks) {
      Matrix strip = detail::clipPolygon(view, p.normal().vector(), p.high(), eps);
      strip = detail::clipPolygon(strip, -p.normal().vector(), -p.low(), eps);
      if (strip.rows() >= 2)
        out += polygon(canvas, strip, "fill=\"#c62828\" fill-opacity=\"0.18\" stroke=\"#c62828\" stroke-width=\"0.8\"");
    }
    out += " </g>\n";
  }
  if (!scene.cuts.empty()) {
    out += " <g id=\"cuts\">\n";
    for (const Hyperplane& h : scene.cuts) {
      // A thin band around the line, clipped to the view, gives the segment.
      const double w = 1e-9 * side;
      Matrix band = detail::clipPolygon(view, h.normal.vector(), h.offset + w, eps);
      band = detail::clipPolygon(band, -h.normal.vector(), -(h.offset - w), eps);
      if (band.rows() < 2) continue;
      const Vector t(Vector{{-h.normal[1], h.normal[0]}});
      Index a = 0;
      Index b = 0;
      const Vector proj = band * t;
      proj.minCoeff(&a);
      proj.maxCoeff(&b);
      out += "  <line x1=\"" + num(canvas.x(band(a, 0))) + "\" y1=\"" + num(canvas.y(band(a, 1))) + "\" x2=\"" +
             num(canvas.x(band(b, 0))) + "\" y2=\"" + num(canvas.y(band(b, 1))) +
             "\" stroke=\"#6a1b9a\" stroke-width=\"1.2\" stroke-dasharray=\"6 3\"/>\n";
    }
    out += " </g>\n";
  }
  if (!scene.points.empty()) {
    out += " <g id=\"points\">\n";
    for (const Vector& p : scene.points) {
      out += "  <circle cx=\"" + num(canvas.x(p[0])) + "\" cy=\"" + num(canvas.y(p[1])) +
             "\" r=\"2.5\" fill=\"#000000\"/>\n";
    }
    out += " </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace plank
