#pragma once

#include <vector>

#include "jdisc/chart.hpp"
#include "jdisc/totally_real.hpp"

namespace jdisc {

/// Wedge {rho_j < 0} with edge E = {rho_j = 0} near the origin, together with
///
///   rho~_j = rho_j - tau sum_{k != j} rho_k + C sum_k rho_k^2
///
/// and the model chart z'_j = rho~_j(z) + i Im(Lz)_j, where Re(Lz)_j is the
/// differential of rho~_j at 0. In model coordinates E = iR^n and the
/// truncated wedge {rho~_j < 0} is {x_j < 0}.
class WedgeModel {
 public:
  WedgeModel(int n, std::vector<ScalarField> rho, double tau, double c_quad, double domain_radius = 1.0);
  // rho_j = x_j
  static WedgeModel standard(int n, double tau = 0.0, double c_quad = 0.0);

  int dimension() const { return n_; }
  double tau() const { return tau_; }
  double c_quad() const { return c_; }
  double domain_radius() const { return radius_; }

  RVector rho(const CVector& z) const;
  RVector rho_tilde(const CVector& z) const;
  // Real gradient of rho_j in (x1, y1, ...), central differences.
  RVector gradient(int j, const CVector& z) const;
  RVector gradient_tilde(int j, const CVector& z) const;

  bool in_wedge(const CVector& z) const;
  bool in_truncated_wedge(const CVector& z) const;
  // {rho_j - delta sum_{k != j} rho_k < 0}
  bool in_delta_wedge(const CVector& z, double delta) const;

  // Tangent space of E = {rho = 0} through p (kernel of the gradients).
  TangentFrame edge_frame(const CVector& p) const;
  const CMatrix& linear_part() const { return l_; }
  const Chart& model_chart() const { return chart_; }

 private:
  int n_;
  std::vector<ScalarField> rho_;
  double tau_, c_, radius_;
  CMatrix l_;
  Chart chart_;
};

}  // namespace jdisc
