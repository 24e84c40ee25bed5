#pragma once

#include "jdisc/complex_structure.hpp"

namespace jdisc {

/// k real tangent vectors at a point, as the columns of a 2n x k matrix.
struct TangentFrame {
  CVector base;
  RMatrix basis;
};

struct RealityTest {
  bool value = false;
  // Smallest relevant singular value of [B | JB].
  double margin = 0.0;
  double largest = 0.0;
};

// T ∩ JT = {0}: [B | JB] has rank 2k. Requires k <= n.
RealityTest is_totally_real(const TangentFrame& frame, const LinearComplexStructure& J);
// span(B ∪ JB) = R^{2n}.
RealityTest is_generic(const TangentFrame& frame, const LinearComplexStructure& J);

}  // namespace jdisc
