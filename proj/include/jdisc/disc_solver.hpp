#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "jdisc/complex_structure.hpp"
#include "jdisc/disc_operators.hpp"
#include "jdisc/fixed_point.hpp"

namespace jdisc {

/// Real boundary data phi: zero on the upper arc, negative on the lower arc.
/// The Schwarz integral S phi is computed once and shared.
class EdgeProfile {
 public:
  // phi(e^{i theta}) = -sin^4 theta on (pi, 2 pi), 0 elsewhere.
  static EdgeProfile standard(GridPtr grid);
  static EdgeProfile from_function(GridPtr grid, const std::function<double(double theta)>& phi);

  const GridPtr& grid() const { return phi_.grid(); }
  const BoundaryFunction& phi() const { return phi_; }
  const DiscFunction& schwarz() const { return *schwarz_; }
  cd schwarz_at(cd zeta) const { return schwarz_value(phi_, zeta); }
  cd schwarz_derivative_at(cd zeta) const { return schwarz_derivative(phi_, zeta); }

 private:
  explicit EdgeProfile(BoundaryFunction phi);
  BoundaryFunction phi_;
  std::shared_ptr<const DiscFunction> schwarz_;
};

/// c, t in R^{n-1} (the first components are fixed to c_1 = 0, t_1 = 1) and lambda.
struct DiscParameters {
  RVector c;
  RVector t;
  double lambda = 0.0;

  int dimension() const { return static_cast<int>(c.size()) + 1; }
  double c_of(int j) const { return j == 0 ? 0.0 : c(j - 1); }
  double t_of(int j) const { return j == 0 ? 1.0 : t(j - 1); }
};

struct SolverOptions {
  double tol = 1e-9;
  double tol_cr = 1e-7;
  double tol_bd = 1e-8;
  double lambda_max = 0.5;
  int continuation_steps = 8;
  FixedPointOptions fixed_point{};
};

struct DiscSolution {
  DiscParameters params;
  DiscMap z;
  double residual = 0.0;
  double attachment_error = 0.0;
  double cr_residual = 0.0;
  int wedge_violations = 0;
  int picard_iterations = 0;
  int newton_iterations = 0;
  double contraction = 0.0;
  // sup |z(lambda_k) - z(0)| along the continuation schedule
  std::vector<double> continuation_distance;
};

// z_j = t_j S phi + i c_j. Requires t_j > 0.
DiscSolution model_disc(const DiscParameters& params, const EdgeProfile& profile);

// h(z) = t S phi + i c + T g - conj(T g (1 / conj zeta)), g = A(lambda z) conj(z_zeta).
DiscMap bishop_rhs(const DiscMap& z, const DiscParameters& params, const ComplexMatrixField& A,
                   const EdgeProfile& profile);

// Continuation in lambda from the model disc; each step is a fixed-point solve.
DiscSolution solve_disc(const DiscParameters& params, const ComplexMatrixField& A, const EdgeProfile& profile,
                        const SolverOptions& opts = {});
// Same, warm-started from a nearby solution at the target lambda.
DiscSolution solve_disc_from(const DiscParameters& params, const ComplexMatrixField& A, const EdgeProfile& profile,
                             DiscMap seed, const SolverOptions& opts = {});

// Diagnostics of a candidate disc.
double cauchy_riemann_residual(const DiscMap& z, const ComplexMatrixField& A, double lambda);
double attachment_error(const DiscMap& z);
int wedge_violations(const DiscMap& z);

}  // namespace jdisc
