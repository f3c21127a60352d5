#pragma once

#include <Eigen/Dense>

#include <vector>

namespace plank {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Unit vector in E^d. Construction rejects inputs whose norm is off by more
/// than 1e-9 and renormalizes the rest so the stored norm is 1 within 1e-12.
class Direction {
 public:
  explicit Direction(const Vector& components);

  /// Scales any non-zero vector onto the sphere.
  static Direction normalized(const Vector& v);

  const Vector& vector() const noexcept { return v_; }
  int dim() const noexcept { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }
  Direction operator-() const;
  double dot(const Vector& x) const { return v_.dot(x); }

 private:
  struct Trusted {};
  Direction(Trusted, Vector v) : v_(std::move(v)) {}
  Vector v_;
};

/// Points x with <normal, x> = offset.
struct Hyperplane {
  Direction normal;
  double offset;
};

/// Closed slab lowOffset <= <normal, x> <= highOffset.
class Plank {
 public:
  Plank(Direction normal, double low, double high);

  const Direction& normal() const noexcept { return normal_; }
  double low() const noexcept { return low_; }
  double high() const noexcept { return high_; }
  double width() const noexcept { return high_ - low_; }
  bool contains(const Vector& x, double slack = 0.0) const;

 private:
  Direction normal_;
  double low_;
  double high_;
};

struct WidthResult {
  double value;
  Direction direction;
  double achievedTolerance;
};

/// Flips v so that its first component with magnitude above 1e-12 is positive.
/// u and -u describe the same family of parallel hyperplanes.
Vector canonicalSign(const Vector& v);

/// Strict lexicographic order on components.
bool lexicographicallyLess(const Vector& a, const Vector& b);

}  // namespace plank
