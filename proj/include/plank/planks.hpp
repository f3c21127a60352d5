#pragma once

#include "plank/convex_body.hpp"
#include "plank/types.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace plank {

using PlankFamily = std::vector<Plank>;

/// w_C(P) = w(P) / w(C, H).
double plankRelativeWidth(const Plank& P, const ConvexBody& C);

/// Union of the translates p + (-s C) over p in H: the plank
/// [offset - s h_C(n), offset + s h_C(-n)], of C-width exactly s. Needs the
/// origin inside C.
Plank thickenHyperplane(const Hyperplane& H, const ConvexBody& C, double s);

enum class CoverageMethod { CellEnumeration, Sampling };
std::string_view coverageMethodName(CoverageMethod m);

struct CoverageOptions {
  enum class Mode { Auto, Exact, Sampling };
  Mode mode = Mode::Auto;
  int samples = 20000;
  std::uint64_t seed = 1;
};

struct CoverageVerdict {
  bool covered = false;
  /// A point of K outside every plank by more than 1e-9, when not covered.
  std::optional<Vector> witness;
  CoverageMethod method = CoverageMethod::CellEnumeration;
  long cellsChecked = 0;
  /// False only when sampling found no witness, which proves nothing.
  bool certified = true;
};

/// Whether K lies in the union of the planks.
///
/// Exact mode walks the 2^n choices of an outside side per plank depth first
/// and solves max s subject to x in K and x at least s beyond the chosen side
/// of every plank so far; a branch is abandoned once s* <= 1e-9, and K is
/// uncovered iff some complete branch keeps s* > 1e-9. Auto uses exact mode up
/// to 16 planks and sampling beyond. Sampling can only refute coverage.
CoverageVerdict coversBody(const ConvexBody& K, const PlankFamily& planks, const CoverageOptions& options = {});

/// sum w(P_i) - w(K). Throws NotACovering.
double bangDeficit(const ConvexBody& K, const PlankFamily& planks);

struct AffineDeficit {
  double plankSum = 0.0;      ///< sum w_C(P_i)
  double bodyWidth = 0.0;     ///< w_C(K)
  double deficit = 0.0;       ///< plankSum - bodyWidth
  int m = 0;                  ///< 0 when the successive variant was not requested
  double scaledInradius = 0.0;  ///< m r_C(K, m)
  double successiveDeficit = 0.0;  ///< plankSum - m r_C(K, m)
};

/// sum w_C(P_i) - w_C(K) and, for m >= 1, sum w_C(P_i) - m r_C(K, m).
/// Throws NotACovering.
AffineDeficit affineDeficit(const ConvexBody& K, const ConvexBody& C, const PlankFamily& planks, int m = 0,
                            double tol = 1e-10);

struct TwoPlankReport {
  double width1 = 0.0;     ///< w_C(P1)
  double width2 = 0.0;     ///< w_C(P2)
  double bodyWidth = 0.0;  ///< w_C(K)
  double margin = 0.0;     ///< width1 + width2 - bodyWidth
  bool violation = false;  ///< margin < -1e-6
};

/// The two-plank inequality w_C(P1) + w_C(P2) >= w_C(K). Throws NotACovering.
TwoPlankReport twoPlankCheck(const ConvexBody& K, const ConvexBody& C, const Plank& P1, const Plank& P2);

}  // namespace plank
