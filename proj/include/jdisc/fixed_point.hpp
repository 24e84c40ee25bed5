#pragma once

#include <functional>

#include "jdisc/disc_function.hpp"

namespace jdisc {

struct FixedPointOptions {
  double tol = 1e-9;
  int max_picard = 100;
  // Switch to Newton once the observed contraction ratio exceeds this.
  double newton_switch = 0.5;
  int max_newton = 20;
  int gmres_restart = 40;
  int gmres_max_iterations = 400;
};

struct FixedPointResult {
  DiscMap z;
  // sup |h(z) - z| at the returned z
  double residual = 0.0;
  int picard_iterations = 0;
  int newton_iterations = 0;
  double contraction = 0.0;
};

using FixedPointMap = std::function<DiscMap(const DiscMap&)>;

// Solves z = h(z) starting from z0. Throws NonConvergence when the tolerance is not met.
FixedPointResult solve_fixed_point(const FixedPointMap& h, DiscMap z0, const FixedPointOptions& opts = {});

}  // namespace jdisc
