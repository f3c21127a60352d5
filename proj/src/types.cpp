#include "plank/types.hpp"

#include "plank/errors.hpp"

#include <cmath>
#include <sstream>

namespace plank {

Direction::Direction(const Vector& components) : v_(components) {
  if (v_.size() < 1) throw Error(ErrorCode::InvalidDirection, "empty direction");
  const double n = v_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "direction norm " << n << " deviates from 1 by more than 1e-9";
    throw Error(ErrorCode::InvalidDirection, os.str());
  }
  v_ /= n;
}

Direction Direction::normalized(const Vector& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n <= 1e-300) throw Error(ErrorCode::InvalidDirection, "zero vector has no direction");
  return Direction(Trusted{}, v / n);
}

Direction Direction::operator-() const { return Direction(Trusted{}, -v_); }

Plank::Plank(Direction normal, double low, double high) : normal_(std::move(normal)), low_(low), high_(high) {
  if (!(low <= high)) throw Error(ErrorCode::InvalidArgument, "plank requires low <= high");
}

bool Plank::contains(const Vector& x, double slack) const {
  const double s = normal_.dot(x);
  return s >= low_ - slack && s <= high_ + slack;
}

Vector canonicalSign(const Vector& v) {
  Vector out = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) out = -v;
      break;
    }
  }
  // Rounding residue of unit vectors that should have exact zeros.
  out = (out.array().abs() < 1e-15).select(0.0, out);
  // Adding +0.0 turns -0.0 into +0.0.
  return out.array() + 0.0;
}

bool lexicographicallyLess(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace plank
