#include "plank/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace plank {
namespace {

using Index = Eigen::Index;

class SeidelSolver {
 public:
  SeidelSolver(double box, double tolerance, std::uint64_t seed) : box_(box), tol_(tolerance), rng_(seed) {}

  // Rows of A are expected to be normalized (max abs entry 1).
  bool solve(const Matrix& A, const Vector& b, const Vector& c, Vector& x) {
    const Index k = c.size();
    if (k == 1) return solve1d(A, b, c[0], x);

    const double cScale = std::max(1.0, c.cwiseAbs().maxCoeff());
    x.resize(k);
    for (Index j = 0; j < k; ++j) {
      if (std::abs(c[j]) <= 1e-12 * cScale) {
        x[j] = 0.0;
      } else {
        x[j] = c[j] > 0 ? box_ : -box_;
      }
    }

    std::vector<Index> order(static_cast<std::size_t>(A.rows()));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng_);

    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const Index i = order[pos];
      const double lhs = A.row(i).dot(x);
      if (lhs - b[i] <= tol_ * (1.0 + std::abs(b[i]) + 1e-6 * x.cwiseAbs().maxCoeff())) continue;

      Index p = 0;
      const double pivotMag = A.row(i).cwiseAbs().maxCoeff(&p);
      if (pivotMag <= 1e-14) return false;
      const double ap = A(i, p);

      // Restrict to <a_i, x> = b_i by eliminating x_p:
      //   x_p = (b_i - sum_{j != p} a_ij x_j) / a_ip.
      const Index rows = static_cast<Index>(pos) + 2;
      Matrix subA(rows, k - 1);
      Vector subB(rows);
      Vector rest(k - 1);
      for (Index j = 0, q = 0; j < k; ++j) {
        if (j != p) rest[q++] = A(i, j) / ap;
      }
      const double fixed = b[i] / ap;

      for (std::size_t t = 0; t < pos; ++t) {
        const Index r = static_cast<Index>(t);
        const Index src = order[t];
        const double coef = A(src, p);
        for (Index j = 0, q = 0; j < k; ++j) {
          if (j == p) continue;
          subA(r, q) = A(src, j) - coef * rest[q];
          ++q;
        }
        subB[r] = b[src] - coef * fixed;
      }
      // Box on the eliminated variable: -box <= x_p <= box.
      subA.row(rows - 2) = -rest.transpose();
      subB[rows - 2] = box_ - fixed;
      subA.row(rows - 1) = rest.transpose();
      subB[rows - 1] = box_ + fixed;

      Vector subC(k - 1);
      for (Index j = 0, q = 0; j < k; ++j) {
        if (j == p) continue;
        subC[q] = c[j] - c[p] * rest[q];
        ++q;
      }

      if (!normalizeRows(subA, subB)) return false;
      Vector y;
      if (!solve(subA, subB, subC, y)) return false;

      for (Index j = 0, q = 0; j < k; ++j) {
        if (j == p) continue;
        x[j] = y[q++];
      }
      x[p] = fixed - rest.dot(y);
    }
    return true;
  }

  // Scales each row to unit max-norm. Rows that vanish are either dropped
  // (satisfied) or prove infeasibility.
  bool normalizeRows(Matrix& A, Vector& b) const {
    Index kept = 0;
    for (Index r = 0; r < A.rows(); ++r) {
      const double s = A.row(r).cwiseAbs().maxCoeff();
      if (s <= 1e-13) {
        if (b[r] < -tol_ * (1.0 + std::abs(b[r]))) return false;
        continue;
      }
      A.row(kept) = A.row(r) / s;
      b[kept] = b[r] / s;
      ++kept;
    }
    A.conservativeResize(kept, A.cols());
    b.conservativeResize(kept);
    return true;
  }

 private:
  bool solve1d(const Matrix& A, const Vector& b, double c, Vector& x) const {
    double lo = -box_;
    double hi = box_;
    for (Index r = 0; r < A.rows(); ++r) {
      const double a = A(r, 0);
      if (std::abs(a) <= 1e-14) {
        if (b[r] < -tol_ * (1.0 + std::abs(b[r]))) return false;
        continue;
      }
      const double bound = b[r] / a;
      if (a > 0) {
        hi = std::min(hi, bound);
      } else {
        lo = std::max(lo, bound);
      }
    }
    if (lo > hi) {
      if (lo - hi > tol_ * (1.0 + std::abs(lo) + std::abs(hi))) return false;
      const double mid = 0.5 * (lo + hi);
      lo = hi = mid;
    }
    x.resize(1);
    if (c > 1e-12) {
      x[0] = hi;
    } else if (c < -1e-12) {
      x[0] = lo;
    } else {
      x[0] = std::clamp(0.0, lo, hi);
    }
    return true;
  }

  double box_;
  double tol_;
  std::mt19937_64 rng_;
};

}  // namespace

LpResult maximize(const Matrix& A, const Vector& b, const Vector& c, const LpOptions& options) {
  LpResult result;
  const double bScale = b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0;
  const double box = options.box > 0 ? options.box : 1e6 * std::max(1.0, bScale);

  Matrix An = A;
  Vector bn = b;
  SeidelSolver solver(box, options.tolerance, options.seed);
  if (!solver.normalizeRows(An, bn)) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  Vector x;
  if (!solver.solve(An, bn, c, x)) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  result.x = x;
  result.value = c.dot(x);
  result.status = x.cwiseAbs().maxCoeff() >= 0.5 * box ? LpStatus::Unbounded : LpStatus::Optimal;
  return result;
}

ChebyshevBall chebyshevBall(const Matrix& A, const Vector& b, const LpOptions& options) {
  const Index d = A.cols();
  Matrix ext(A.rows(), d + 1);
  ext.leftCols(d) = A;
  ext.col(d) = A.rowwise().norm();
  Vector c = Vector::Zero(d + 1);
  c[d] = 1.0;
  LpOptions opts = options;
  if (opts.box <= 0) opts.box = 1e6 * std::max(1.0, b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
  const LpResult r = maximize(ext, b, c, opts);
  if (r.status == LpStatus::Infeasible) return {-opts.box, Vector::Zero(d)};
  return {r.x[d], r.x.head(d)};
}

}  // namespace plank
