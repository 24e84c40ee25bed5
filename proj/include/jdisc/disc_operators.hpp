#pragma once

#include "jdisc/cauchy_green.hpp"
#include "jdisc/disc_function.hpp"

namespace jdisc {

/// Boundary arc {e^{i theta}: begin <= theta <= end}, end - begin in [0, 2 pi].
struct Arc {
  double begin = 0.0;
  double end = 0.0;
  double length() const { return end - begin; }
  static Arc upper() { return {0.0, kPi}; }
  static Arc lower() { return {kPi, 2.0 * kPi}; }
  static Arc full() { return {0.0, 2.0 * kPi}; }
};

// Mean of the boundary samples (Fourier coefficient 0).
cd average(const BoundaryFunction& phi);

// Boundary operators act on Fourier coefficients: K keeps the non-negative
// modes (Nyquist halved), S doubles them and subtracts the mean.
cd cauchy_transform(const BoundaryFunction& f, cd zeta);
DiscFunction cauchy_transform(const BoundaryFunction& f);
DiscFunction schwarz_transform(const BoundaryFunction& phi);

// Evaluates S phi and its complex derivative at an arbitrary point of the closed disc.
cd schwarz_value(const BoundaryFunction& phi, cd zeta);
cd schwarz_derivative(const BoundaryFunction& phi, cd zeta);

DiscFunction cauchy_green(const DiscFunction& g);
cd reflected_cauchy_green(const DiscFunction& g, cd zeta);

// S phi + i P0 psi + T f_zetabar - conj(T f_zetabar (1/conj zeta)), phi + i psi = f on the circle.
DiscFunction green_schwarz_reconstruct(const DiscFunction& f);

double harmonic_measure(cd zeta, const Arc& arc);

}  // namespace jdisc
