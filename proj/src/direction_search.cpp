#include "plank/direction_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace plank {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498948482;

struct Candidate {
  double value;
  Vector direction;
};

// Keeps the running minimum with lexicographic tie-breaking.
class Best {
 public:
  void offer(double value, const Vector& u) {
    const Vector c = canonicalSign(u);
    if (!have_) {
      value_ = value;
      dir_ = c;
      have_ = true;
      return;
    }
    const double tieBand = 1e-12 * std::max(std::abs(value_), std::abs(value)) + 1e-15;
    if (value < value_ - tieBand) {
      value_ = value;
      dir_ = c;
    } else if (std::abs(value - value_) <= tieBand) {
      if (lexicographicallyLess(c, dir_)) dir_ = c;
      value_ = std::min(value_, value);
    }
  }
  double value() const { return value_; }
  const Vector& direction() const { return dir_; }

 private:
  bool have_ = false;
  double value_ = 0.0;
  Vector dir_;
};

Vector fromAngle(double theta) { return Vector{{std::cos(theta), std::sin(theta)}}; }

double angleModPi(const Vector& u) {
  double t = std::atan2(u[1], u[0]);
  if (t < 0) t += kPi;
  if (t >= kPi) t -= kPi;
  return t;
}

DirectionMinimum minimize2d(const DirectionObjective& f, const std::vector<Vector>& breakpoints, bool refineArcs,
                            const DirectionSearchOptions& options) {
  struct Break {
    double angle;
    Vector u;
  };
  std::vector<Break> br;
  br.reserve(breakpoints.size());
  for (const auto& v : breakpoints) {
    const Vector u = v.normalized();
    br.push_back({angleModPi(u), u});
  }
  std::sort(br.begin(), br.end(), [](const Break& a, const Break& b) { return a.angle < b.angle; });
  std::vector<Break> uniq;
  for (const auto& b : br) {
    if (uniq.empty() || b.angle - uniq.back().angle > 1e-14) uniq.push_back(b);
  }
  if (uniq.size() > 1 && uniq.front().angle + kPi - uniq.back().angle <= 1e-14) uniq.pop_back();

  Best best;
  for (const auto& b : uniq) best.offer(f(b.u), b.u);

  const bool fullCircle = uniq.empty();
  if (refineArcs || fullCircle) {
    std::vector<std::pair<double, double>> arcs;
    if (fullCircle) {
      arcs.emplace_back(0.0, kPi);
      best.offer(f(fromAngle(0.0)), fromAngle(0.0));
    } else {
      for (std::size_t i = 0; i < uniq.size(); ++i) {
        const double a = uniq[i].angle;
        const double b = i + 1 < uniq.size() ? uniq[i + 1].angle : uniq.front().angle + kPi;
        arcs.emplace_back(a, b);
      }
    }
    for (auto [a, b] : arcs) {
      if (b - a <= options.angleTolerance) continue;
      double x1 = b - kInvPhi * (b - a);
      double x2 = a + kInvPhi * (b - a);
      double f1 = f(fromAngle(x1));
      double f2 = f(fromAngle(x2));
      while (b - a > options.angleTolerance) {
        if (f1 <= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - kInvPhi * (b - a);
          f1 = f(fromAngle(x1));
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + kInvPhi * (b - a);
          f2 = f(fromAngle(x2));
        }
      }
      const double mid = 0.5 * (a + b);
      best.offer(f(fromAngle(mid)), fromAngle(mid));
    }
  }
  return {best.value(), best.direction(), 1e-9};
}

// Orthonormal basis of the tangent space at u.
Matrix tangentBasis(const Vector& u) {
  const int d = static_cast<int>(u.size());
  Eigen::HouseholderQR<Matrix> qr(u);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  return q.rightCols(d - 1);
}

// Pattern search on the sphere. Returns the final step length.
double refineOnSphere(const DirectionObjective& f, Vector& u, double& value) {
  double step = 0.05;
  const double minStep = 1e-9;
  int guard = 0;
  while (step > minStep && guard++ < 4000) {
    const Matrix basis = tangentBasis(u);
    bool improved = false;
    for (Eigen::Index j = 0; j < basis.cols() && !improved; ++j) {
      for (int s = -1; s <= 1; s += 2) {
        Vector trial = (u + s * step * basis.col(j)).normalized();
        const double v = f(trial);
        if (v < value) {
          value = v;
          u = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return step;
}

double unitSphereArea(int dim) {
  // Surface area of S^{dim-1}.
  return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

DirectionMinimum minimizeNd(int dim, const DirectionObjective& f, const std::vector<Vector>& breakpoints,
                            double lipschitz, const DirectionSearchOptions& options) {
  std::vector<Candidate> evaluated;
  const auto samples = sphereSamples(dim, options.samples);
  evaluated.reserve(samples.size() + breakpoints.size());
  for (const auto& u : samples) evaluated.push_back({f(u), u});
  for (const auto& v : breakpoints) {
    const Vector u = v.normalized();
    evaluated.push_back({f(u), u});
  }
  std::stable_sort(evaluated.begin(), evaluated.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

  Best best;
  for (const auto& c : evaluated) best.offer(c.value, c.direction);
  const double sampledMin = best.value();

  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(options.refineStarts), evaluated.size());
  double finalStep = 0.0;
  for (std::size_t i = 0; i < starts; ++i) {
    Vector u = evaluated[i].direction;
    double value = evaluated[i].value;
    finalStep = std::max(finalStep, refineOnSphere(f, u, value));
    best.offer(value, u);
  }

  // The sampled minimum undershoots the true minimum by at most L * delta,
  // delta being the covering radius of the sample set (estimated from the
  // area per sample). The refined value never exceeds the sampled minimum.
  // Fibonacci points cover S^2 with radius about 0.62 sqrt(area per point);
  // random points in d >= 4 get a factor 2 margin.
  const double covering = dim == 3 ? 1.0 : 2.0;
  const double delta = covering * std::pow(unitSphereArea(dim) / static_cast<double>(samples.size()), 1.0 / (dim - 1));
  const double globalBound = lipschitz * delta - (sampledMin - best.value());
  const double tol = std::max({1e-9, lipschitz * finalStep, globalBound});
  return {best.value(), best.direction(), tol};
}

}  // namespace

std::vector<Vector> sphereSamples(int dim, int count) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int i = 0; i < count; ++i) out.push_back(fromAngle(kPi * (i + 0.5) / count));
  } else if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i;
      out.push_back(Vector{{r * std::cos(phi), r * std::sin(phi), z}});
    }
  } else {
    std::mt19937_64 rng(0x51a7e5eedULL + static_cast<unsigned>(dim));
    std::normal_distribution<double> gauss;
    while (static_cast<int>(out.size()) < count) {
      Vector v(dim);
      for (int j = 0; j < dim; ++j) v[j] = gauss(rng);
      const double n = v.norm();
      if (n > 1e-9) out.push_back(v / n);
    }
  }
  return out;
}

DirectionMinimum minimizeOverDirections(int dim, const DirectionObjective& f, const std::vector<Vector>& breakpoints,
                                        bool refineArcs, double lipschitz, const DirectionSearchOptions& options) {
  if (dim == 2) return minimize2d(f, breakpoints, refineArcs, options);
  return minimizeNd(dim, f, breakpoints, lipschitz, options);
}

}  // namespace plank
