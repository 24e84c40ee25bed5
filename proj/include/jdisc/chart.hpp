#pragma once

#include <functional>
#include <vector>

#include "jdisc/complex_structure.hpp"

namespace jdisc {

// Complex Jacobians (F_z, F_zbar) from the real 2n x 2n Jacobian of a map C^n -> C^n.
void complex_jacobians(const RMatrix& real_jacobian, CMatrix& dz, CMatrix& dzbar);
// Real Jacobian of v -> dz v + dzbar conj(v).
RMatrix real_jacobian(const CMatrix& dz, const CMatrix& dzbar);

/// A local coordinate change z -> z' near the origin of C^n.
class Chart {
 public:
  using Map = std::function<CVector(const CVector&)>;
  using Jacobian = std::function<void(const CVector&, CMatrix& dz, CMatrix& dzbar)>;

  // Without a Jacobian callback the Jacobians are central differences with step fd_step.
  Chart(int n, Map forward, Jacobian jacobian = {}, double fd_step = 1e-4);
  static Chart identity(int n);
  static Chart linear(const CMatrix& B);
  // z_i + sum_{j,l} q[l](i, j) z_l conj(z_j).
  static Chart quadratic(const std::vector<CMatrix>& q);

  int dimension() const { return n_; }
  CVector operator()(const CVector& z) const { return forward_(z); }
  void jacobian(const CVector& z, CMatrix& dz, CMatrix& dzbar) const;
  // Newton on the real system, started from guess (defaults to w itself).
  CVector inverse(const CVector& w) const;
  CVector inverse(const CVector& w, const CVector& guess) const;

  // next o this
  Chart then(const Chart& next) const;

 private:
  int n_;
  Map forward_;
  Jacobian jacobian_;
  double fd_step_;
};

// A' = (z'_z A + z'_zbar)(conj(z'_z) + conj(z'_zbar) A)^{-1} at z = chart^{-1}(z').
// The result keeps A's domain radius unless one is given.
ComplexMatrixField transform_complex_matrix(const ComplexMatrixField& A, const Chart& chart,
                                            double domain_radius = 0.0);

struct NormalizedStructure {
  Chart chart;
  ComplexMatrixField field;
  // coefficients[l](i, j) = dA_ij / dz_l (0)
  std::vector<CMatrix> coefficients;
};

// Quadratic chart z_i - sum a_ijl z_l conj(z_j) that removes the z-linear part of A at 0.
NormalizedStructure normalize_structure(const ComplexMatrixField& A);

}  // namespace jdisc
