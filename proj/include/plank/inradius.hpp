#pragma once

#include "plank/convex_body.hpp"
#include "plank/geometry.hpp"

#include <string>
#include <vector>

namespace plank {

struct SuccessiveInradiusResult {
  double rho = 0.0;       ///< r_C(K, m)
  int m = 1;
  double residual = 0.0;  ///< |w_C(K^{rho C}) - m rho| at rho
  int iterations = 0;
  double bracketLow = 0.0;
  double bracketHigh = 0.0;
  std::string method;     ///< "fixed-point" or "packing"
};

/// w_C(K^{rho C}), the minimal C-width of the union of all translates of
/// rho C inside K. Computed as w_C(K_{-rho C}) + rho without forming the
/// rounded body; equals rho once the erosion has no interior.
///
/// Values depend on C only up to translation, so C is re-centred on its
/// Chebyshev center when the origin is not interior. Throws RhoOutOfRange
/// unless 0 < rho <= r_C(K, 1).
double roundedRelativeWidth(const ConvexBody& K, const ConvexBody& C, double rho);

/// r_C(K, m): the unique rho with w_C(K^{rho C}) = m rho, by bisection on
/// f(rho) = w_C(K^{rho C}) - m rho over (0, r_C(K, 1)]. Stops once the bracket
/// is below tol * max(1, r_C(K, 1)) and the residual is below
/// (m + 1) tol scale(K).
SuccessiveInradiusResult successiveInradius(const ConvexBody& K, const ConvexBody& C, int m, double tol = 1e-10);

/// m translates t + lambda_k v + rho C, k = 1..m, with lambda_1 = 0, whose
/// projections onto the line spanned by `separatingDirection` are pairwise
/// non-overlapping.
struct LinearPacking {
  Vector base;
  Vector directionVector;
  std::vector<double> shifts;
  double scale = 0.0;
  Vector separatingDirection;

  std::vector<Vector> centers() const;
};

struct PackingCheck {
  bool feasible = false;
  double slack = 0.0;  ///< w(K_{-rho C}, l) - (m - 1) rho w(C, l)
  std::optional<LinearPacking> witness;
};

/// Whether m translates of rho C fit in K with l as separating direction.
/// Requires the origin inside C. The witness spaces the translates evenly
/// between the two extreme points of the erosion along l.
PackingCheck packingFeasible(const ConvexBody& K, const ConvexBody& C, int m, double rho, const Direction& l);

/// Re-checks a packing from scratch: every translate inside K (facet by
/// facet) and consecutive projections at least rho w(C, l) apart.
bool validatePacking(const ConvexBody& K, const ConvexBody& C, const LinearPacking& packing, double tol = 1e-9);

/// Independent route to r_C(K, m): the largest rho such that every line
/// direction admits a linear packing of m translates of rho C in K, i.e.
/// min over l of [w(K_{-rho C}, l) - (m - 1) rho w(C, l)] >= 0.
SuccessiveInradiusResult successiveInradiusViaPacking(const ConvexBody& K, const ConvexBody& C, int m,
                                                      double tol = 1e-10);

struct SequenceTerm {
  int m;
  double rho;     ///< r_C(K, m)
  double scaled;  ///< m r_C(K, m)
};

/// (m, r_C(K, m), m r_C(K, m)) for m = 1..mMax.
std::vector<SequenceTerm> inradiusSequence(const ConvexBody& K, const ConvexBody& C, int mMax, double tol = 1e-10);

/// C translated so that the origin is interior (unchanged if it already is).
ConvexBody centeredGauge(const ConvexBody& C);

}  // namespace plank
