#pragma once

#include "plank/types.hpp"

#include <functional>

namespace plank {

struct DirectionSearchOptions {
  // d >= 3: number of quasi-uniform sample directions.
  int samples = 4096;
  // d >= 3: number of best samples handed to local refinement.
  int refineStarts = 8;
  // 2D golden-section stopping width in radians.
  double angleTolerance = 1e-10;
};

// Objective over unit directions with f(u) = f(-u).
using DirectionObjective = std::function<double(const Vector&)>;

struct DirectionMinimum {
  double value;
  Vector direction;  // canonical sign
  double achievedTolerance;
};

// Minimizes a direction objective.
//
// 2D: the circle is split at `breakpoints` (taken modulo pi); the objective is
// evaluated exactly at every breakpoint and, on arcs flagged for refinement,
// by golden-section search. Callers pass `refineArcs = false` when the
// objective is known to be monotone or concave on every arc.
//
// d >= 3: Fibonacci-sphere (d = 3) or seeded Gaussian (d >= 4) samples plus
// the breakpoints, then a pattern search on the sphere from the best starts.
// `lipschitz` bounds |f(u) - f(v)| / |u - v| and turns the sample covering
// radius into the reported tolerance.
//
// Ties within 1e-12 relative are broken towards the lexicographically
// smallest canonical direction.
DirectionMinimum minimizeOverDirections(int dim, const DirectionObjective& f, const std::vector<Vector>& breakpoints,
                                        bool refineArcs, double lipschitz, const DirectionSearchOptions& options = {});

// Deterministic quasi-uniform directions on S^{d-1}.
std::vector<Vector> sphereSamples(int dim, int count);

}  // namespace plank
