#include "plank/inradius.hpp"

#include "plank/errors.hpp"
#include "plank/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plank {

using Index = Eigen::Index;

namespace {

void checkOrder(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be a positive integer");
}

void checkTolerance(double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
}

// w_C(K_{-rho C}) with the lower-dimensional case defined as 0.
double erodedRelativeWidth(const ConvexBody& K, const ConvexBody& C, double rho) {
  const HalfspaceSet e = erode(K, C, rho);
  if (!e.fullDimensional()) return 0.0;
  return minimalRelativeWidth(*e.body, C).value;
}

// f(rho) = w_C(K^{rho C}) - m rho.
double fixedPointGap(const ConvexBody& K, const ConvexBody& C, int m, double rho) {
  return erodedRelativeWidth(K, C, rho) + rho - m * rho;
}

double supportOfSet(const HalfspaceSet& set, const Vector& u) {
  if (set.body) return detail::supportAlong(*set.body, u);
  return lpSupportValue(set.normals, set.offsets, u);
}

Vector supportPointOfSet(const HalfspaceSet& set, const Vector& u) {
  if (set.body) return supportPoint(*set.body, Direction::normalized(u));
  const LpResult r = maximize(set.normals, set.offsets, u);
  if (r.status != LpStatus::Optimal) throw Error(ErrorCode::RhoOutOfRange, "erosion is empty");
  return r.x;
}

// min over directions l of w(K_{-rho C}, l) - (m - 1) rho w(C, l); negative
// infinity stands for an empty erosion.
double packingMargin(const ConvexBody& K, const ConvexBody& C, int m, double rho) {
  const HalfspaceSet e = erode(K, C, rho);
  if (e.status == SetStatus::Empty) return -std::numeric_limits<double>::infinity();
  if (e.status == SetStatus::LowerDimensional) {
    // Some direction sees zero width, so only a single translate fits.
    return m == 1 ? 0.0 : -(m - 1) * rho * minimalWidth(C).value;
  }
  const ConvexBody& E = *e.body;
  std::vector<Vector> breaks = widthBreakpoints(E);
  for (auto& v : widthBreakpoints(C)) breaks.push_back(std::move(v));
  const double factor = (m - 1) * rho;
  const double lipschitz = 2.0 * detail::circumradiusBound(E) + factor * 2.0 * detail::circumradiusBound(C);
  const auto g = [&](const Vector& u) { return detail::widthAlong(E, u) - factor * detail::widthAlong(C, u); };
  return minimizeOverDirections(K.dim(), g, breaks, true, lipschitz).value;
}

}  // namespace

ConvexBody centeredGauge(const ConvexBody& C) {
  if (C.isBall() || C.hasHalfspaces()) {
    if (originInInterior(C, 1e-6)) return C;
  }
  return C.translated(-interiorPoint(C));
}

double roundedRelativeWidth(const ConvexBody& K, const ConvexBody& C, double rho) {
  requireSameDimension(K, C);
  const ConvexBody gauge = centeredGauge(C);
  const double r = cInradius(K, gauge).scale;
  if (!(rho > 0) || rho > r * (1.0 + 1e-9)) {
    std::ostringstream os;
    os << "rho = " << rho << " outside (0, " << r << "]";
    throw Error(ErrorCode::RhoOutOfRange, os.str());
  }
  return erodedRelativeWidth(K, gauge, std::min(rho, r)) + rho;
}

SuccessiveInradiusResult successiveInradius(const ConvexBody& K, const ConvexBody& C, int m, double tol) {
  requireSameDimension(K, C);
  checkOrder(m);
  checkTolerance(tol);
  const ConvexBody gauge = centeredGauge(C);
  const double r = cInradius(K, gauge).scale;

  SuccessiveInradiusResult out;
  out.m = m;
  out.method = "fixed-point";

  // f is decreasing and f(r) = w_C(K^{rC}) - r = 0, so the root is r itself.
  if (m == 1) {
    out.rho = r;
    out.residual = std::abs(fixedPointGap(K, gauge, 1, r));
    out.bracketLow = out.bracketHigh = r;
    return out;
  }

  double lo = r / 1024.0;
  int shrink = 0;
  while (fixedPointGap(K, gauge, m, lo) <= 0.0) {
    if (++shrink > 6) throw Error(ErrorCode::NonBracketing, "f(rho) stays non-positive near rho = 0");
    lo /= 1024.0;
  }
  double hi = r;
  const double width = tol * std::max(1.0, r);
  int iterations = 0;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (fixedPointGap(K, gauge, m, mid) > 0.0 ? lo : hi) = mid;
    ++iterations;
  }
  double rho = 0.5 * (lo + hi);
  double residual = std::abs(fixedPointGap(K, gauge, m, rho));
  const double bound = (m + 1) * tol * K.scale();
  while (residual > bound && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi) {
    (fixedPointGap(K, gauge, m, rho) > 0.0 ? lo : hi) = rho;
    ++iterations;
    rho = 0.5 * (lo + hi);
    residual = std::abs(fixedPointGap(K, gauge, m, rho));
  }
  out.rho = rho;
  out.residual = residual;
  out.iterations = iterations;
  out.bracketLow = lo;
  out.bracketHigh = hi;
  return out;
}

std::vector<Vector> LinearPacking::centers() const {
  std::vector<Vector> out;
  out.reserve(shifts.size());
  for (double s : shifts) out.push_back(base + s * directionVector);
  return out;
}

PackingCheck packingFeasible(const ConvexBody& K, const ConvexBody& C, int m, double rho, const Direction& l) {
  requireSameDimension(K, C);
  checkOrder(m);
  if (!(rho > 0)) throw Error(ErrorCode::RhoOutOfRange, "rho must be positive");
  const HalfspaceSet e = erode(K, C, rho);
  if (e.status == SetStatus::Empty) throw Error(ErrorCode::RhoOutOfRange, "erosion of K by rho C is empty");
  const Vector& u = l.vector();
  const double hiSupport = supportOfSet(e, u);
  const double loSupport = -supportOfSet(e, -u);
  PackingCheck out;
  out.slack = (hiSupport - loSupport) - (m - 1) * rho * detail::widthAlong(C, u);
  out.feasible = out.slack >= -1e-9;
  if (!out.feasible) return out;

  LinearPacking p;
  p.scale = rho;
  p.separatingDirection = u;
  p.base = supportPointOfSet(e, -u);
  if (m == 1) {
    p.directionVector = u;
    p.shifts = {0.0};
  } else {
    const Vector top = supportPointOfSet(e, u);
    p.directionVector = top - p.base;
    if (p.directionVector.norm() <= 1e-300) p.directionVector = u;
    for (int k = 0; k < m; ++k) p.shifts.push_back(static_cast<double>(k) / (m - 1));
  }
  out.witness = std::move(p);
  return out;
}

bool validatePacking(const ConvexBody& K, const ConvexBody& C, const LinearPacking& packing, double tol) {
  if (packing.shifts.empty() || packing.shifts.front() != 0.0) return false;
  if (packing.directionVector.norm() <= 0) return false;
  for (std::size_t k = 1; k < packing.shifts.size(); ++k) {
    if (!(packing.shifts[k] > packing.shifts[k - 1])) return false;
  }
  const Matrix& A = K.normals();
  const Vector& b = K.offsets();
  Vector reach(A.rows());
  for (Index r = 0; r < A.rows(); ++r) reach[r] = packing.scale * detail::supportAlong(C, A.row(r).transpose());
  const auto centers = packing.centers();
  for (const auto& t : centers) {
    if (((A * t) + reach - b).maxCoeff() > tol) return false;
  }
  const Vector& l = packing.separatingDirection;
  const double needed = packing.scale * detail::widthAlong(C, l);
  for (std::size_t k = 1; k < centers.size(); ++k) {
    if ((centers[k] - centers[k - 1]).dot(l) < needed - tol) return false;
  }
  return true;
}

SuccessiveInradiusResult successiveInradiusViaPacking(const ConvexBody& K, const ConvexBody& C, int m, double tol) {
  requireSameDimension(K, C);
  checkOrder(m);
  checkTolerance(tol);
  const ConvexBody gauge = centeredGauge(C);
  const double r = cInradius(K, gauge).scale;
  double lo = 0.0;
  double hi = r;
  int iterations = 0;
  if (packingMargin(K, gauge, m, hi) >= 0.0) {
    lo = hi;
  } else {
    while (hi - lo > tol * std::max(1.0, r)) {
      const double mid = 0.5 * (lo + hi);
      (packingMargin(K, gauge, m, mid) >= 0.0 ? lo : hi) = mid;
      ++iterations;
    }
  }
  SuccessiveInradiusResult out;
  out.m = m;
  out.method = "packing";
  out.rho = 0.5 * (lo + hi);
  out.iterations = iterations;
  out.bracketLow = lo;
  out.bracketHigh = hi;
  out.residual = std::abs(packingMargin(K, gauge, m, std::min(out.rho, r)));
  return out;
}

std::vector<SequenceTerm> inradiusSequence(const ConvexBody& K, const ConvexBody& C, int mMax, double tol) {
  if (mMax < 1) throw Error(ErrorCode::InvalidArgument, "mMax must be at least 1");
  std::vector<SequenceTerm> out;
  out.reserve(static_cast<std::size_t>(mMax));
  for (int m = 1; m <= mMax; ++m) {
    const double rho = successiveInradius(K, C, m, tol).rho;
    out.push_back({m, rho, m * rho});
  }
  return out;
}

}  // namespace plank
