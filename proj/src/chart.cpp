#include "jdisc/chart.hpp"

#include <Eigen/LU>

#include "finite_difference.hpp"

namespace jdisc {

void complex_jacobians(const RMatrix& R, CMatrix& dz, CMatrix& dzbar) {
  const auto n = R.rows() / 2;
  dz.resize(n, n);
  dzbar.resize(n, n);
  for (Eigen::Index l = 0; l < n; ++l) {
    const CVector dx = to_complex(R.col(2 * l));
    const CVector dy = to_complex(R.col(2 * l + 1));
    dz.col(l) = 0.5 * (dx - kI * dy);
    dzbar.col(l) = 0.5 * (dx + kI * dy);
  }
}

RMatrix real_jacobian(const CMatrix& dz, const CMatrix& dzbar) {
  const auto n = dz.rows();
  RMatrix R(2 * n, 2 * n);
  for (Eigen::Index l = 0; l < n; ++l) {
    R.col(2 * l) = to_real(dz.col(l) + dzbar.col(l));
    R.col(2 * l + 1) = to_real(kI * (dz.col(l) - dzbar.col(l)));
  }
  return R;
}

Chart::Chart(int n, Map forward, Jacobian jacobian, double fd_step)
    : n_(n), forward_(std::move(forward)), jacobian_(std::move(jacobian)), fd_step_(fd_step) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (!forward_) throw InvalidArgument("empty chart map");
}

Chart Chart::identity(int n) {
  return Chart(
      n, [](const CVector& z) { return z; },
      [n](const CVector&, CMatrix& dz, CMatrix& dzbar) {
        dz = CMatrix::Identity(n, n);
        dzbar = CMatrix::Zero(n, n);
      });
}

Chart Chart::linear(const CMatrix& B) {
  const int n = static_cast<int>(B.rows());
  if (B.cols() != n) throw InvalidArgument("linear chart must be square");
  return Chart(
      n, [B](const CVector& z) { return (B * z).eval(); },
      [B, n](const CVector&, CMatrix& dz, CMatrix& dzbar) {
        dz = B;
        dzbar = CMatrix::Zero(n, n);
      });
}

Chart Chart::quadratic(const std::vector<CMatrix>& q) {
  const int n = static_cast<int>(q.size());
  return Chart(
      n,
      [q, n](const CVector& z) {
        CVector w = z;
        for (int l = 0; l < n; ++l) w += z(l) * (q[l] * z.conjugate());
        return w;
      },
      [q, n](const CVector& z, CMatrix& dz, CMatrix& dzbar) {
        dz = CMatrix::Identity(n, n);
        dzbar = CMatrix::Zero(n, n);
        const CVector zb = z.conjugate();
        for (int l = 0; l < n; ++l) {
          dz.col(l) += q[l] * zb;
          dzbar += z(l) * q[l];
        }
      });
}

void Chart::jacobian(const CVector& z, CMatrix& dz, CMatrix& dzbar) const {
  if (jacobian_) {
    jacobian_(z, dz, dzbar);
    return;
  }
  RMatrix R(2 * n_, 2 * n_);
  for (int c = 0; c < 2 * n_; ++c) {
    const cd dir = c % 2 == 0 ? cd(1.0) : kI;
    R.col(c) = to_real(detail::central_difference(
        [&](double s) {
          CVector p = z;
          p(c / 2) += s * dir;
          return forward_(p);
        },
        fd_step_));
  }
  complex_jacobians(R, dz, dzbar);
}

CVector Chart::inverse(const CVector& w) const { return inverse(w, w); }

CVector Chart::inverse(const CVector& w, const CVector& guess) const {
  CVector z = guess;
  const double tol = 1e-15 * (1.0 + w.norm());
  CMatrix dz, dzbar;
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    const CVector r = forward_(z) - w;
    const double rn = r.norm();
    if (rn <= tol) return z;
    // Stalled at rounding level.
    if (it > 3 && rn >= 0.5 * best && rn < 1e-12 * (1.0 + w.norm())) return z;
    best = std::min(best, rn);
    jacobian(z, dz, dzbar);
    Eigen::PartialPivLU<RMatrix> lu(real_jacobian(dz, dzbar));
    if (!(lu.rcond() > 1e-14)) throw SingularStructure("chart Jacobian is singular");
    z -= to_complex(lu.solve(to_real(r)));
  }
  throw SingularStructure("chart inverse did not converge");
}

Chart Chart::then(const Chart& next) const {
  if (next.n_ != n_) throw InvalidArgument("chart dimensions differ");
  Chart first = *this;
  return Chart(
      n_, [first, next](const CVector& z) { return next(first(z)); },
      [first, next](const CVector& z, CMatrix& dz, CMatrix& dzbar) {
        CMatrix a, ab, b, bb;
        first.jacobian(z, a, ab);
        next.jacobian(first(z), b, bb);
        // d(g o f)/dz = g_w f_z + g_wbar conj(f_zbar)
        dz = b * a + bb * ab.conjugate();
        dzbar = b * ab + bb * a.conjugate();
      });
}

ComplexMatrixField transform_complex_matrix(const ComplexMatrixField& A, const Chart& chart, double domain_radius) {
  if (chart.dimension() != A.dimension()) throw InvalidArgument("chart and field dimensions differ");
  const double radius = domain_radius > 0.0 ? domain_radius : A.domain_radius();
  return ComplexMatrixField(
      A.dimension(),
      [A, chart](const CVector& w) {
        const CVector z = chart.inverse(w);
        CMatrix dz, dzbar;
        chart.jacobian(z, dz, dzbar);
        const CMatrix a = A(z);
        const CMatrix num = dz * a + dzbar;
        const CMatrix den = dz.conjugate() + dzbar.conjugate() * a;
        Eigen::PartialPivLU<CMatrix> lu(den.transpose());
        if (!(lu.rcond() > 1e-14)) throw SingularStructure("chart denominator is singular");
        return CMatrix(lu.solve(num.transpose()).transpose());
      },
      radius);
}

NormalizedStructure normalize_structure(const ComplexMatrixField& A) {
  const int n = A.dimension();
  const CVector origin = CVector::Zero(n);
  if (A(origin).cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("normalization requires A(0) = 0");
  std::vector<CMatrix> dz, dzbar;
  A.derivatives(origin, dz, dzbar);
  std::vector<CMatrix> q(n);
  for (int l = 0; l < n; ++l) q[l] = -dz[l];
  Chart chart = Chart::quadratic(q);
  return {chart, transform_complex_matrix(A, chart), dz};
}

}  // namespace jdisc
