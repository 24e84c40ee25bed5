#pragma once

#include "jdisc/complex_structure.hpp"
#include "jdisc/disc_grid.hpp"
#include "jdisc/fixed_point.hpp"

namespace jdisc {

struct LeviOptions {
  // Discs are solved in coordinates w = (z - p) / scale.
  double scale = 0.02;
  int boundary_nodes = 64;
  int radial_nodes = 24;
  FixedPointOptions solver{1e-12, 200, 0.5, 20, 40, 400};
};

// J-holomorphic disc f with f(0) = p and f_xi(0) = V, as a map on the grid
// in the scaled coordinates w = (f - p) / scale.
DiscMap levi_disc(const ComplexMatrixField& A, const CVector& p, const CVector& V, GridPtr grid, double scale,
                  const FixedPointOptions& opts);

// Laplacian at 0 of u o f for the disc above, Delta = d^2/dxi^2 + d^2/deta^2.
double levi_form(const ScalarField& u, const ComplexMatrixField& A, const CVector& p, const CVector& V,
                 const LeviOptions& opts = {});

// Standard structure only: second differences of u along V and iV.
double standard_levi_form(const ScalarField& u, const CVector& p, const CVector& V, double h = 1e-3);

}  // namespace jdisc
