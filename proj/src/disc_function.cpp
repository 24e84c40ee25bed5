#include "jdisc/disc_function.hpp"

#include <algorithm>
#include <cmath>

#include "jdisc/fourier.hpp"

namespace jdisc {

// ---------------------------------------------------------------- boundary

BoundaryFunction::BoundaryFunction(GridPtr grid)
    : grid_(std::move(grid)), values_(grid_->boundary_count(), cd{}) {}

BoundaryFunction::BoundaryFunction(GridPtr grid, std::vector<cd> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->boundary_count())
    throw InvalidArgument("BoundaryFunction: sample count does not match grid");
}

BoundaryFunction BoundaryFunction::from_function(GridPtr grid, const std::function<cd(double)>& f) {
  std::vector<cd> v(grid->boundary_count());
  for (int k = 0; k < grid->boundary_count(); ++k) v[k] = f(grid->angle(k));
  return BoundaryFunction(std::move(grid), std::move(v));
}

BoundaryFunction BoundaryFunction::from_coefficients(GridPtr grid, std::span<const cd> coefficients) {
  auto values = fourier::inverse(coefficients);
  BoundaryFunction b(std::move(grid), std::move(values));
  b.coefficients_ = std::make_shared<const std::vector<cd>>(coefficients.begin(), coefficients.end());
  return b;
}

const std::vector<cd>& BoundaryFunction::coefficients() const {
  if (!coefficients_) coefficients_ = std::make_shared<const std::vector<cd>>(fourier::forward(values_));
  return *coefficients_;
}

bool BoundaryFunction::is_real(double tol) const {
  return std::all_of(values_.begin(), values_.end(), [tol](cd v) { return std::abs(v.imag()) <= tol; });
}

// ---------------------------------------------------------------- disc

DiscFunction::DiscFunction(GridPtr grid) : grid_(std::move(grid)), values_(grid_->node_count(), cd{}) {}

DiscFunction DiscFunction::from_function(GridPtr grid, const std::function<cd(cd)>& f) {
  DiscFunction out(grid);
  for (int r = 0; r < grid->ring_count(); ++r)
    for (int k = 0; k < grid->boundary_count(); ++k) out(r, k) = f(grid->node(r, k));
  return out;
}

DiscFunction DiscFunction::constant(GridPtr grid, cd value) {
  DiscFunction out(std::move(grid));
  std::fill(out.values_.begin(), out.values_.end(), value);
  return out;
}

DiscFunction DiscFunction::from_power_series(GridPtr grid, std::span<const cd> taylor) {
  DiscFunction out(grid);
  const int n = grid->boundary_count();
  const int top = std::min<int>(static_cast<int>(taylor.size()), n / 2);
  std::vector<cd> modes(n);
  for (int r = 0; r < grid->ring_count(); ++r) {
    const double rho = grid->ring_radius(r);
    std::fill(modes.begin(), modes.end(), cd{});
    double p = 1.0;
    for (int k = 0; k < top; ++k) {
      modes[k] = taylor[k] * p;
      p *= rho;
    }
    auto v = fourier::inverse(modes);
    std::copy(v.begin(), v.end(), out.ring(r).begin());
  }
  return out;
}

BoundaryFunction DiscFunction::boundary() const {
  auto b = ring(grid_->radial_count());
  return BoundaryFunction(grid_, std::vector<cd>(b.begin(), b.end()));
}

void DiscFunction::set_boundary(const BoundaryFunction& b) {
  auto dst = ring(grid_->radial_count());
  std::copy(b.values().begin(), b.values().end(), dst.begin());
}

void DiscFunction::polar_derivatives(DiscFunction& dr, DiscFunction& dtheta) const {
  const int n = boundary_count();
  const int rings = ring_count();
  for (int r = 0; r < rings; ++r) {
    auto c = fourier::forward(ring(r));
    for (int s = 0; s < n; ++s) {
      const int k = fourier::wavenumber(s, n);
      c[s] *= (s == n / 2) ? cd{} : cd(0.0, k);
    }
    auto v = fourier::inverse(c);
    std::copy(v.begin(), v.end(), dtheta.ring(r).begin());
  }
  using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> f(values_.data(), rings, n);
  Eigen::Map<RowMat> out(dr.values_.data(), rings, n);
  out.noalias() = grid_->radial_derivative().cast<cd>() * f;
}

DiscFunction DiscFunction::d_zetabar() const {
  DiscFunction dr(grid_), dth(grid_);
  polar_derivatives(dr, dth);
  DiscFunction out(grid_);
  for (int r = 0; r < ring_count(); ++r) {
    const double rho = grid_->ring_radius(r);
    for (int k = 0; k < boundary_count(); ++k)
      out(r, k) = 0.5 * grid_->boundary_node(k) * (dr(r, k) + kI * dth(r, k) / rho);
  }
  return out;
}

DiscFunction DiscFunction::d_zeta() const {
  DiscFunction dr(grid_), dth(grid_);
  polar_derivatives(dr, dth);
  DiscFunction out(grid_);
  for (int r = 0; r < ring_count(); ++r) {
    const double rho = grid_->ring_radius(r);
    for (int k = 0; k < boundary_count(); ++k)
      out(r, k) = 0.5 * std::conj(grid_->boundary_node(k)) * (dr(r, k) - kI * dth(r, k) / rho);
  }
  return out;
}

DiscFunction DiscFunction::conj() const {
  DiscFunction out(*this);
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

DiscFunction DiscFunction::real() const {
  DiscFunction out(*this);
  for (auto& v : out.values_) v = v.real();
  return out;
}

DiscFunction DiscFunction::imag() const {
  DiscFunction out(*this);
  for (auto& v : out.values_) v = v.imag();
  return out;
}

double DiscFunction::sup_norm() const {
  double m = 0.0;
  for (cd v : values_) m = std::max(m, std::abs(v));
  return m;
}

double DiscFunction::interior_sup_norm() const {
  double m = 0.0;
  for (int r = 0; r < grid_->radial_count(); ++r)
    for (cd v : ring(r)) m = std::max(m, std::abs(v));
  return m;
}

DiscFunction& DiscFunction::operator+=(const DiscFunction& o) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}
DiscFunction& DiscFunction::operator-=(const DiscFunction& o) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}
DiscFunction& DiscFunction::operator*=(cd s) {
  for (auto& v : values_) v *= s;
  return *this;
}
DiscFunction& DiscFunction::operator+=(cd s) {
  for (auto& v : values_) v += s;
  return *this;
}

// ---------------------------------------------------------------- interpolant

DiscInterpolant::DiscInterpolant(const DiscFunction& f) : grid_(f.grid()) {
  ring_coefficients_.reserve(f.ring_count());
  for (int r = 0; r < f.ring_count(); ++r) ring_coefficients_.push_back(fourier::forward(f.ring(r)));
}

cd DiscInterpolant::operator()(cd zeta) const {
  const double rho = std::abs(zeta);
  if (rho > 1.0 + 1e-12) throw InvalidArgument("DiscInterpolant: point outside the closed disc");
  const double theta = std::arg(zeta);
  const auto w = grid_->ring_interpolation_weights(std::min(rho, 1.0));
  cd acc = 0.0;
  for (std::size_t r = 0; r < w.size(); ++r) {
    if (w[r] == 0.0) continue;
    acc += w[r] * fourier::evaluate(ring_coefficients_[r], theta);
  }
  return acc;
}

// ---------------------------------------------------------------- maps

CVector value_at(const DiscMap& z, int ring, int k) {
  CVector v(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) v(j) = z[j](ring, k);
  return v;
}

double sup_distance(const DiscMap& a, const DiscMap& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, (a[j] - b[j]).sup_norm());
  return m;
}

}  // namespace jdisc
