#include "jdisc/complex_structure.hpp"

#include <memory>

#include <Eigen/LU>

#include "finite_difference.hpp"

namespace jdisc {

RMatrix standard_J(int n) {
  RMatrix J = RMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    J(2 * j, 2 * j + 1) = -1.0;
    J(2 * j + 1, 2 * j) = 1.0;
  }
  return J;
}

LinearComplexStructure::LinearComplexStructure(RMatrix J, double tol) : j_(std::move(J)) {
  if (j_.rows() != j_.cols() || j_.rows() % 2 != 0 || j_.rows() == 0)
    throw InvalidArgument("complex structure must be a square matrix of even size");
  const RMatrix sq = j_ * j_ + RMatrix::Identity(j_.rows(), j_.cols());
  if (sq.cwiseAbs().maxCoeff() > tol) throw InvalidArgument("J^2 != -I");
}

RMatrix antilinear_matrix(const CMatrix& A) {
  const auto n = A.rows();
  RMatrix L(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    // conj(e_k) = e_k, conj(i e_k) = -i e_k
    L.col(2 * k) = to_real(A.col(k));
    L.col(2 * k + 1) = to_real(-kI * A.col(k));
  }
  return L;
}

namespace {
RMatrix checked_solve(const RMatrix& lhs, const RMatrix& rhs, const char* what) {
  Eigen::PartialPivLU<RMatrix> lu(lhs);
  if (!(lu.rcond() > 1e-12)) throw SingularStructure(what);
  return lu.solve(rhs);
}
}  // namespace

CMatrix complex_matrix(const LinearComplexStructure& J) {
  const int n = J.dimension();
  const RMatrix Jst = standard_J(n);
  const RMatrix L = checked_solve(Jst + J.matrix(), Jst - J.matrix(), "J_st + J is singular");
  CMatrix A(n, n);
  for (int k = 0; k < n; ++k) A.col(k) = to_complex(L.col(2 * k));
  return A;
}

LinearComplexStructure structure_from_complex_matrix(const CMatrix& A) {
  const auto n = A.rows();
  const RMatrix L = antilinear_matrix(A);
  const RMatrix I = RMatrix::Identity(2 * n, 2 * n);
  // (I + L)^{-1} and (I - L) commute.
  const RMatrix X = checked_solve(I + L, I - L, "I + L is singular");
  return LinearComplexStructure(standard_J(static_cast<int>(n)) * X, 1e-8);
}

ComplexMatrixField::ComplexMatrixField(int n, Evaluator a, double domain_radius, Derivative d)
    : n_(n), a_(std::move(a)), radius_(domain_radius), d_(std::move(d)) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (!(domain_radius > 0.0)) throw InvalidArgument("domain radius must be positive");
  if (!a_) throw InvalidArgument("empty evaluator");
}

ComplexMatrixField ComplexMatrixField::zero(int n, double domain_radius) {
  ComplexMatrixField f(
      n, [n](const CVector&) { return CMatrix::Zero(n, n).eval(); }, domain_radius,
      [n](const CVector&, std::vector<CMatrix>& dz, std::vector<CMatrix>& dzbar) {
        dz.assign(n, CMatrix::Zero(n, n));
        dzbar.assign(n, CMatrix::Zero(n, n));
      });
  f.zero_ = true;
  return f;
}

ComplexMatrixField ComplexMatrixField::constant(const CMatrix& A, double domain_radius) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw InvalidArgument("complex matrix must be square");
  ComplexMatrixField f(
      n, [A](const CVector&) { return A; }, domain_radius,
      [n](const CVector&, std::vector<CMatrix>& dz, std::vector<CMatrix>& dzbar) {
        dz.assign(n, CMatrix::Zero(n, n));
        dzbar.assign(n, CMatrix::Zero(n, n));
      });
  f.zero_ = A.isZero(0.0);
  return f;
}

ComplexMatrixField ComplexMatrixField::polynomial(int n, const std::vector<std::vector<Polynomial>>& entries,
                                                  double domain_radius) {
  struct Entry {
    int i, j;
    Polynomial p;
    std::vector<Polynomial> dz, dzbar;
  };
  auto table = std::make_shared<std::vector<Entry>>();
  for (int i = 0; i < static_cast<int>(entries.size()); ++i)
    for (int j = 0; j < static_cast<int>(entries[i].size()); ++j) {
      const Polynomial& p = entries[i][j];
      if (p.empty()) continue;
      if (i >= n || j >= n || p.dimension() != n) throw InvalidArgument("polynomial entry outside the n x n matrix");
      Entry e{i, j, p, {}, {}};
      for (int l = 0; l < n; ++l) {
        e.dz.push_back(p.d_z(l));
        e.dzbar.push_back(p.d_zbar(l));
      }
      table->push_back(std::move(e));
    }
  ComplexMatrixField f(
      n,
      [n, table](const CVector& z) {
        CMatrix A = CMatrix::Zero(n, n);
        for (const auto& e : *table) A(e.i, e.j) = e.p(z);
        return A;
      },
      domain_radius,
      [n, table](const CVector& z, std::vector<CMatrix>& dz, std::vector<CMatrix>& dzbar) {
        dz.assign(n, CMatrix::Zero(n, n));
        dzbar.assign(n, CMatrix::Zero(n, n));
        for (const auto& e : *table)
          for (int l = 0; l < n; ++l) {
            dz[l](e.i, e.j) = e.dz[l](z);
            dzbar[l](e.i, e.j) = e.dzbar[l](z);
          }
      });
  f.zero_ = table->empty();
  return f;
}

CMatrix ComplexMatrixField::operator()(const CVector& z) const {
  if (zero_) return CMatrix::Zero(n_, n_);
  return a_(z);
}

void ComplexMatrixField::derivatives(const CVector& z, std::vector<CMatrix>& dz, std::vector<CMatrix>& dzbar) const {
  if (d_) {
    d_(z, dz, dzbar);
    return;
  }
  const double h = fd_step();
  dz.assign(n_, CMatrix());
  dzbar.assign(n_, CMatrix());
  for (int l = 0; l < n_; ++l) {
    auto along = [&](cd dir) {
      return [&, dir](double s) {
        CVector p = z;
        p(l) += s * dir;
        return a_(p);
      };
    };
    const CMatrix dx = detail::central_difference(along(1.0), h);
    const CMatrix dy = detail::central_difference(along(kI), h);
    dz[l] = 0.5 * (dx - kI * dy);
    dzbar[l] = 0.5 * (dx + kI * dy);
  }
}

CMatrix ComplexMatrixField::d_z(const CVector& z, int l) const {
  std::vector<CMatrix> dz, dzbar;
  derivatives(z, dz, dzbar);
  return dz.at(l);
}

CMatrix ComplexMatrixField::d_zbar(const CVector& z, int l) const {
  std::vector<CMatrix> dz, dzbar;
  derivatives(z, dz, dzbar);
  return dzbar.at(l);
}

ComplexMatrixField complex_matrix_from_J(int n, std::function<RMatrix(const CVector&)> J, double domain_radius) {
  return ComplexMatrixField(
      n, [J = std::move(J)](const CVector& z) { return complex_matrix(LinearComplexStructure(J(z))); },
      domain_radius);
}

ComplexMatrixField dilate_structure(const ComplexMatrixField& A, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("dilation factor must be positive");
  if (lambda == 1.0) return A;
  if (A.is_zero()) return ComplexMatrixField::zero(A.dimension(), A.domain_radius() / lambda);
  return ComplexMatrixField(
      A.dimension(), [A, lambda](const CVector& z) { return A(lambda * z); }, A.domain_radius() / lambda,
      [A, lambda](const CVector& z, std::vector<CMatrix>& dz, std::vector<CMatrix>& dzbar) {
        A.derivatives(lambda * z, dz, dzbar);
        for (auto& m : dz) m *= lambda;
        for (auto& m : dzbar) m *= lambda;
      });
}

}  // namespace jdisc
