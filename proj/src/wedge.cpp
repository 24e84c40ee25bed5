#include "jdisc/wedge.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include "finite_difference.hpp"

namespace jdisc {

WedgeModel::WedgeModel(int n, std::vector<ScalarField> rho, double tau, double c_quad, double domain_radius)
    : n_(n), rho_(std::move(rho)), tau_(tau), c_(c_quad), radius_(domain_radius), chart_(Chart::identity(n)) {
  if (static_cast<int>(rho_.size()) != n) throw InvalidArgument("wedge needs exactly n defining functions");
  if (tau < 0.0 || c_quad < 0.0) throw InvalidArgument("tau and C must be non-negative");
  const CVector origin = CVector::Zero(n);
  l_.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const RVector g = gradient_tilde(j, origin);
    // a x + b y = Re((a - ib) z)
    for (int k = 0; k < n; ++k) l_(j, k) = cd(g(2 * k), -g(2 * k + 1));
  }
  Eigen::PartialPivLU<CMatrix> lu(l_);
  if (!(lu.rcond() > 1e-10)) throw InvalidArgument("edge is not totally real at the origin");

  auto rho_copy = rho_;
  const double t = tau_, c = c_, h = 1e-4 * radius_;
  const CMatrix L = l_;
  auto tilde = [rho_copy, t, c, n](const CVector& z) {
    RVector r(n);
    for (int j = 0; j < n; ++j) r(j) = rho_copy[j](z);
    RVector out(n);
    const double sum = r.sum(), sq = r.squaredNorm();
    for (int j = 0; j < n; ++j) out(j) = r(j) - t * (sum - r(j)) + c * sq;
    return out;
  };
  chart_ = Chart(
      n,
      [tilde, L](const CVector& z) {
        const RVector r = tilde(z);
        const CVector lz = L * z;
        CVector w(r.size());
        for (Eigen::Index j = 0; j < r.size(); ++j) w(j) = cd(r(j), lz(j).imag());
        return w;
      },
      {}, h);
}

WedgeModel WedgeModel::standard(int n, double tau, double c_quad) {
  std::vector<ScalarField> rho;
  for (int j = 0; j < n; ++j) rho.push_back([j](const CVector& z) { return z(j).real(); });
  return WedgeModel(n, std::move(rho), tau, c_quad, 1.0);
}

RVector WedgeModel::rho(const CVector& z) const {
  RVector r(n_);
  for (int j = 0; j < n_; ++j) r(j) = rho_[j](z);
  return r;
}

RVector WedgeModel::rho_tilde(const CVector& z) const {
  const RVector r = rho(z);
  const double sum = r.sum(), sq = r.squaredNorm();
  RVector out(n_);
  for (int j = 0; j < n_; ++j) out(j) = r(j) - tau_ * (sum - r(j)) + c_ * sq;
  return out;
}

RVector WedgeModel::gradient(int j, const CVector& z) const {
  const double h = 1e-4 * radius_;
  RVector g(2 * n_);
  for (int c = 0; c < 2 * n_; ++c) {
    const cd dir = c % 2 == 0 ? cd(1.0) : kI;
    g(c) = detail::central_difference(
        [&](double s) {
          CVector p = z;
          p(c / 2) += s * dir;
          return rho_[j](p);
        },
        h);
  }
  return g;
}

RVector WedgeModel::gradient_tilde(int j, const CVector& z) const {
  const RVector r = rho(z);
  RVector g = RVector::Zero(2 * n_);
  for (int k = 0; k < n_; ++k) {
    const RVector gk = gradient(k, z);
    const double coef = (k == j ? 1.0 : -tau_) + 2.0 * c_ * r(k);
    g += coef * gk;
  }
  return g;
}

bool WedgeModel::in_wedge(const CVector& z) const { return (rho(z).array() < 0.0).all(); }

bool WedgeModel::in_truncated_wedge(const CVector& z) const { return (rho_tilde(z).array() < 0.0).all(); }

bool WedgeModel::in_delta_wedge(const CVector& z, double delta) const {
  const RVector r = rho(z);
  const double sum = r.sum();
  for (int j = 0; j < n_; ++j)
    if (!(r(j) - delta * (sum - r(j)) < 0.0)) return false;
  return true;
}

TangentFrame WedgeModel::edge_frame(const CVector& p) const {
  RMatrix G(n_, 2 * n_);
  for (int j = 0; j < n_; ++j) G.row(j) = gradient(j, p).transpose();
  Eigen::JacobiSVD<RMatrix> svd(G, Eigen::ComputeFullV);
  const RVector s = svd.singularValues();
  if (!(s(n_ - 1) > 1e-8 * s(0))) throw InvalidArgument("defining functions have dependent gradients");
  return {p, svd.matrixV().rightCols(n_)};
}

}  // namespace jdisc
