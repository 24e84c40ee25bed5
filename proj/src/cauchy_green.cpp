#include "jdisc/cauchy_green.hpp"

#include <cmath>

#include "jdisc/fourier.hpp"

namespace jdisc {

CauchyGreenKernel::CauchyGreenKernel(const DiscGrid& grid)
    : grid_(grid), n_(grid.boundary_count()), m_(grid.radial_count()) {
  // Inner rule exact for (degree M-1 interpolant) x s^{1+|k|}, |k| <= N/2.
  gauss_legendre((m_ + n_ / 2) / 2 + 4, 0.0, 1.0, inner_nodes_, inner_weights_);
  gauss_legendre(m_ + n_ / 4, 0.0, 1.0, outer_nodes_, outer_weights_);

  const std::size_t per_ring = static_cast<std::size_t>(n_) * m_;
  table_.assign(per_ring * grid.ring_count(), 0.0);
  for (int ring = 0; ring < grid.ring_count(); ++ring)
    radius_weights(grid.ring_radius(ring), std::span<double>(table_.data() + ring * per_ring, per_ring));
}

void CauchyGreenKernel::radius_weights(double rho, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> basis(m_);

  if (rho > 0.0) {
    for (std::size_t q = 0; q < inner_nodes_.size(); ++q) {
      const double s = inner_nodes_[q];
      grid_.interior_interpolation_weights(rho * s, basis);
      double factor = 2.0 * rho * inner_weights_[q] * s;  // k = 0 carries s^1
      for (int k = 0; !dropped(k); --k) {
        if (std::abs(factor) < 1e-300) break;
        double* w = out.data() + static_cast<std::size_t>(fourier::slot(k, n_)) * m_;
        for (int m = 0; m < m_; ++m) w[m] += factor * basis[m];
        factor *= s;
      }
    }
  }

  if (rho < 1.0) {
    const double log_rho = rho > 0.0 ? std::log(rho) : 0.0;
    for (std::size_t q = 0; q < outer_nodes_.size(); ++q) {
      const double u = outer_nodes_[q];
      double r, jac, ratio;
      if (rho > 0.0) {
        // r = rho^u maps u in [0,1] onto [rho, 1] with nodes clustered at rho.
        r = std::exp(u * log_rho);
        jac = outer_weights_[q] * r * (-log_rho);
        ratio = rho / r;
      } else {
        r = u;
        jac = outer_weights_[q];
        ratio = 0.0;
      }
      grid_.interior_interpolation_weights(r, basis);
      double factor = -2.0 * jac;
      for (int k = 1; k < n_ / 2; ++k) {
        if (std::abs(factor) < 1e-300) break;
        double* w = out.data() + static_cast<std::size_t>(fourier::slot(k, n_)) * m_;
        for (int m = 0; m < m_; ++m) w[m] += factor * basis[m];
        factor *= ratio;
      }
    }
  }
}

std::vector<std::vector<cd>> CauchyGreenKernel::interior_modes(const DiscFunction& g) const {
  std::vector<std::vector<cd>> modes(m_);
  for (int m = 0; m < m_; ++m) modes[m] = fourier::forward(g.ring(m));
  return modes;
}

std::vector<cd> CauchyGreenKernel::ring_modes(const std::vector<std::vector<cd>>& modes,
                                              std::span<const double> w) const {
  std::vector<cd> out(n_, cd{});
  for (int s = 0; s < n_; ++s) {
    const int k = fourier::wavenumber(s, n_);
    if (dropped(k)) continue;
    const double* ws = w.data() + static_cast<std::size_t>(s) * m_;
    cd acc = 0.0;
    for (int m = 0; m < m_; ++m) acc += ws[m] * modes[m][s];
    out[fourier::slot(k - 1, n_)] = acc;
  }
  return out;
}

DiscFunction CauchyGreenKernel::apply(const DiscFunction& g) const {
  const auto modes = interior_modes(g);
  DiscFunction out(g.grid());
  const std::size_t per_ring = static_cast<std::size_t>(n_) * m_;
  for (int ring = 0; ring < grid_.ring_count(); ++ring) {
    auto c = ring_modes(modes, std::span<const double>(table_.data() + ring * per_ring, per_ring));
    auto v = fourier::inverse(c);
    std::copy(v.begin(), v.end(), out.ring(ring).begin());
  }
  return out;
}

std::vector<cd> CauchyGreenKernel::exterior_coefficients(const DiscFunction& g) const {
  const auto modes = interior_modes(g);
  const std::size_t per_ring = static_cast<std::size_t>(n_) * m_;
  const std::span<const double> w(table_.data() + m_ * per_ring, per_ring);
  std::vector<cd> a(n_, cd{});
  for (int s = 0; s < n_; ++s) {
    const int k = fourier::wavenumber(s, n_);
    if (k > 0 || dropped(k)) continue;
    const double* ws = w.data() + static_cast<std::size_t>(s) * m_;
    cd acc = 0.0;
    for (int m = 0; m < m_; ++m) acc += ws[m] * modes[m][s];
    a[s] = acc;
  }
  return a;
}

DiscFunction CauchyGreenKernel::reflected(const DiscFunction& g) const {
  const auto a = exterior_coefficients(g);
  DiscFunction out(g.grid());
  std::vector<cd> c(n_);
  for (int ring = 0; ring < grid_.ring_count(); ++ring) {
    const double rho = grid_.ring_radius(ring);
    std::fill(c.begin(), c.end(), cd{});
    double p = rho;  // rho^{1-k}, k = 0
    for (int k = 0; !dropped(k); --k) {
      c[fourier::slot(1 - k, n_)] = std::conj(a[fourier::slot(k, n_)]) * p;
      p *= rho;
    }
    auto v = fourier::inverse(c);
    std::copy(v.begin(), v.end(), out.ring(ring).begin());
  }
  return out;
}

DiscFunction CauchyGreenKernel::symmetrized(const DiscFunction& g) const {
  DiscFunction out = apply(g);
  out -= reflected(g);
  for (cd& v : out.ring(grid_.radial_count())) v = cd(0.0, v.imag());
  return out;
}

cd CauchyGreenKernel::evaluate(const DiscFunction& g, cd zeta) const {
  const double rho = std::abs(zeta);
  if (rho >= 1.0) {
    const auto a = exterior_coefficients(g);
    cd acc = 0.0;
    const cd inv = 1.0 / zeta;
    cd p = inv;  // zeta^{k-1}, k = 0
    for (int k = 0; !dropped(k); --k) {
      acc += a[fourier::slot(k, n_)] * p;
      p *= inv;
    }
    return acc;
  }
  const auto modes = interior_modes(g);
  std::vector<double> w(static_cast<std::size_t>(n_) * m_);
  radius_weights(rho, w);
  const auto c = ring_modes(modes, w);
  return fourier::evaluate(c, std::arg(zeta));
}

cd CauchyGreenKernel::evaluate_reflected(const DiscFunction& g, cd zeta) const {
  const auto a = exterior_coefficients(g);
  cd acc = 0.0;
  cd p = zeta;
  for (int k = 0; !dropped(k); --k) {
    acc += std::conj(a[fourier::slot(k, n_)]) * p;
    p *= zeta;
  }
  return acc;
}

cd CauchyGreenKernel::value_at_origin(const DiscFunction& g) const {
  const auto modes = interior_modes(g);
  std::vector<double> basis(m_);
  cd acc = 0.0;
  for (std::size_t q = 0; q < outer_nodes_.size(); ++q) {
    grid_.interior_interpolation_weights(outer_nodes_[q], basis);
    cd v = 0.0;
    for (int m = 0; m < m_; ++m) v += basis[m] * modes[m][1];
    acc += outer_weights_[q] * v;
  }
  return -2.0 * acc;
}

cd CauchyGreenKernel::d_zeta_at_origin(const DiscFunction& g) const {
  const auto modes = interior_modes(g);
  std::vector<double> basis(m_);
  cd acc = 0.0;
  for (std::size_t q = 0; q < outer_nodes_.size(); ++q) {
    const double r = outer_nodes_[q];
    grid_.interior_interpolation_weights(r, basis);
    cd v = 0.0;
    for (int m = 0; m < m_; ++m) v += basis[m] * modes[m][2];
    acc += outer_weights_[q] * v / r;
  }
  return -2.0 * acc;
}

}  // namespace jdisc
