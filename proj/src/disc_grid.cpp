#include "jdisc/disc_grid.hpp"

#include <cmath>

#include "jdisc/cauchy_green.hpp"

namespace jdisc {

void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  // (P_count(x), P_count'(x)) by the three-term recurrence.
  auto legendre = [count](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, count * (x * p1 - p0) / (x * x - 1.0)};
  };
  for (int i = 0; i < count; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const int slot = count - 1 - i;  // ascending order
    nodes[slot] = a + (b - a) * 0.5 * (x + 1.0);
    weights[slot] = 2.0 / ((1.0 - x * x) * dp * dp) * 0.5 * (b - a);
  }
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n, 1.0);
  // Scale differences by the inverse of a quarter interval to stay in range.
  double lo = nodes[0], hi = nodes[0];
  for (double x : nodes) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double scale = 4.0 / std::max(hi - lo, 1e-300);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) w[j] /= (nodes[j] - nodes[k]) * scale;
    }
  }
  return w;
}

void barycentric_basis(std::span<const double> nodes, std::span<const double> weights, double x,
                       std::span<double> out) {
  const std::size_t n = nodes.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (x == nodes[j]) {
      for (std::size_t k = 0; k < n; ++k) out[k] = k == j ? 1.0 : 0.0;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = weights[j] / (x - nodes[j]);
    denom += out[j];
  }
  for (std::size_t j = 0; j < n; ++j) out[j] /= denom;
}

std::shared_ptr<const DiscGrid> DiscGrid::create(int boundary_count, int radial_count) {
  return std::make_shared<const DiscGrid>(boundary_count, radial_count);
}

DiscGrid::DiscGrid(int boundary_count, int radial_count) : n_(boundary_count), m_(radial_count) {
  if (n_ < 4 || n_ % 2 != 0) throw InvalidArgument("DiscGrid: boundary count must be even and >= 4");
  if (m_ < 2) throw InvalidArgument("DiscGrid: radial count must be >= 2");
  unit_.resize(n_);
  for (int k = 0; k < n_; ++k) unit_[k] = std::polar(1.0, angle(k));
  // Exact values at the quarter points keep the upper/lower arc split clean.
  unit_[0] = 1.0;
  unit_[n_ / 2] = -1.0;
  if (n_ % 4 == 0) {
    unit_[n_ / 4] = kI;
    unit_[3 * n_ / 4] = -kI;
  }
  gauss_legendre(m_, 0.0, 1.0, radial_nodes_, radial_weights_);

  ring_radii_ = radial_nodes_;
  ring_radii_.push_back(1.0);
  const auto& radii = ring_radii_;
  ring_bary_ = barycentric_weights(radii);
  interior_bary_ = barycentric_weights(radial_nodes_);

  const int r = ring_count();
  radial_diff_ = RMatrix::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    double diag = 0.0;
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const double d = (ring_bary_[j] / ring_bary_[i]) / (radii[i] - radii[j]);
      radial_diff_(i, j) = d;
      diag -= d;
    }
    radial_diff_(i, i) = diag;
  }
}

DiscGrid::~DiscGrid() = default;

std::vector<double> DiscGrid::ring_interpolation_weights(double r) const {
  std::vector<double> out(ring_radii_.size());
  barycentric_basis(ring_radii_, ring_bary_, r, out);
  return out;
}

void DiscGrid::interior_interpolation_weights(double r, std::span<double> out) const {
  barycentric_basis(radial_nodes_, interior_bary_, r, out);
}

const CauchyGreenKernel& DiscGrid::cauchy_green() const {
  std::call_once(kernel_once_, [this] { kernel_ = std::make_unique<CauchyGreenKernel>(*this); });
  return *kernel_;
}

}  // namespace jdisc
