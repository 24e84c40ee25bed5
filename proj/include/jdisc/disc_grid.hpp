#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "jdisc/types.hpp"

namespace jdisc {

class CauchyGreenKernel;

/// Discretization of the closed unit disc shared by every disc operator.
///
/// Boundary nodes are the N-th roots of unity. The interior is a tensor
/// polar grid: trapezoid in angle (the same N angles) times Gauss-Legendre
/// in radius on (0,1). Functions on the disc are stored ring by ring; rings
/// 0..M-1 sit at the radial nodes and ring M is the unit circle itself.
class DiscGrid {
 public:
  static std::shared_ptr<const DiscGrid> create(int boundary_count = 256, int radial_count = 64);

  int boundary_count() const { return n_; }
  int radial_count() const { return m_; }
  int ring_count() const { return m_ + 1; }
  std::size_t node_count() const { return static_cast<std::size_t>(ring_count()) * n_; }

  double angle(int k) const { return 2.0 * kPi * k / n_; }
  cd boundary_node(int k) const { return unit_[k]; }
  // e^{i theta_k}
  std::span<const cd> unit_nodes() const { return unit_; }

  double ring_radius(int ring) const { return ring < m_ ? radial_nodes_[ring] : 1.0; }
  cd node(int ring, int k) const { return ring_radius(ring) * unit_[k]; }

  std::span<const double> radial_nodes() const { return radial_nodes_; }
  std::span<const double> radial_weights() const { return radial_weights_; }
  std::span<const double> ring_radii() const { return ring_radii_; }
  // Area weight of any node on interior ring m. Weights of all N*M nodes sum to pi.
  double area_weight(int m) const { return radial_nodes_[m] * radial_weights_[m] * 2.0 * kPi / n_; }

  // Boundary node spacing h = 2 pi / N.
  double spacing() const { return 2.0 * kPi / n_; }
  double edge_guard() const { return 10.0 * spacing(); }
  // Nodes theta_k in [0, pi]: k = 0..N/2.
  int upper_arc_count() const { return n_ / 2 + 1; }
  bool on_upper_arc(int k) const { return k <= n_ / 2; }

  // Spectral differentiation in r over the ring radii (r_0..r_{M-1}, 1).
  const RMatrix& radial_derivative() const { return radial_diff_; }
  // Lagrange weights at radius r over the ring radii (M+1 entries).
  std::vector<double> ring_interpolation_weights(double r) const;
  // Lagrange weights at radius r over the interior radial nodes only (M entries).
  void interior_interpolation_weights(double r, std::span<double> out) const;

  const CauchyGreenKernel& cauchy_green() const;

  DiscGrid(int boundary_count, int radial_count);
  ~DiscGrid();
  DiscGrid(const DiscGrid&) = delete;
  DiscGrid& operator=(const DiscGrid&) = delete;

 private:
  int n_;
  int m_;
  std::vector<cd> unit_;
  std::vector<double> radial_nodes_;
  std::vector<double> radial_weights_;
  std::vector<double> ring_radii_;
  std::vector<double> ring_bary_;      // barycentric weights, ring radii
  std::vector<double> interior_bary_;  // barycentric weights, interior nodes
  RMatrix radial_diff_;
  mutable std::once_flag kernel_once_;
  mutable std::unique_ptr<CauchyGreenKernel> kernel_;
};

using GridPtr = std::shared_ptr<const DiscGrid>;

/// Gauss-Legendre nodes and weights mapped to [a, b].
void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

/// Barycentric weights for Lagrange interpolation on arbitrary distinct nodes.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Lagrange basis values at x (exact node hits handled).
void barycentric_basis(std::span<const double> nodes, std::span<const double> weights, double x,
                       std::span<double> out);

}  // namespace jdisc
