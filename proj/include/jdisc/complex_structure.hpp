#pragma once

#include <functional>
#include <vector>

#include "jdisc/polynomial.hpp"
#include "jdisc/types.hpp"

namespace jdisc {

// diag(J2, ..., J2) with J2 = [[0, -1], [1, 0]] in coordinates (x1, y1, x2, y2, ...).
RMatrix standard_J(int n);

/// A real 2n x 2n matrix with J^2 = -I.
class LinearComplexStructure {
 public:
  explicit LinearComplexStructure(RMatrix J, double tol = 1e-10);
  static LinearComplexStructure standard(int n) { return LinearComplexStructure(standard_J(n)); }

  int dimension() const { return static_cast<int>(j_.rows() / 2); }
  const RMatrix& matrix() const { return j_; }

 private:
  RMatrix j_;
};

// Real 2n x 2n matrix of the antilinear map v -> A conj(v).
RMatrix antilinear_matrix(const CMatrix& A);

// A with L v = A conj(v), L = (J_st + J)^{-1} (J_st - J).
CMatrix complex_matrix(const LinearComplexStructure& J);
// J = J_st (I + L)^{-1} (I - L). Requires I + L invertible (|A| < 1).
LinearComplexStructure structure_from_complex_matrix(const CMatrix& A);

/// z -> A(z) in Mat(n, C), the complex matrix of an almost complex structure
/// in local coordinates, valid on the ball of radius domain_radius.
///
/// Derivatives come from the supplied callback when present and otherwise from
/// fourth-order central differences with step 1e-4 * domain_radius.
class ComplexMatrixField {
 public:
  using Evaluator = std::function<CMatrix(const CVector&)>;
  // Fills dz[l] = dA/dz_l and dzbar[l] = dA/dzbar_l, l = 0..n-1.
  using Derivative = std::function<void(const CVector&, std::vector<CMatrix>& dz, std::vector<CMatrix>& dzbar)>;

  ComplexMatrixField(int n, Evaluator a, double domain_radius, Derivative d = {});
  static ComplexMatrixField zero(int n, double domain_radius = 1e6);
  // Constant field. |A| < 1 is required for the structure to exist.
  static ComplexMatrixField constant(const CMatrix& A, double domain_radius = 1e6);
  // Entry (i, j) is entries[i][j]; missing rows or columns are zero.
  static ComplexMatrixField polynomial(int n, const std::vector<std::vector<Polynomial>>& entries,
                                       double domain_radius);

  int dimension() const { return n_; }
  double domain_radius() const { return radius_; }
  bool is_zero() const { return zero_; }
  bool contains(const CVector& z) const { return z.norm() <= radius_; }

  CMatrix operator()(const CVector& z) const;
  void derivatives(const CVector& z, std::vector<CMatrix>& dz, std::vector<CMatrix>& dzbar) const;
  CMatrix d_z(const CVector& z, int l) const;
  CMatrix d_zbar(const CVector& z, int l) const;
  double fd_step() const { return 1e-4 * radius_; }

 private:
  int n_;
  Evaluator a_;
  double radius_;
  Derivative d_;
  bool zero_ = false;
};

// Builds A pointwise from a field of linear complex structures.
ComplexMatrixField complex_matrix_from_J(int n, std::function<RMatrix(const CVector&)> J, double domain_radius);

// Complex matrix of the push-forward by z -> z / lambda, i.e. z -> A(lambda z).
ComplexMatrixField dilate_structure(const ComplexMatrixField& A, double lambda);

}  // namespace jdisc
