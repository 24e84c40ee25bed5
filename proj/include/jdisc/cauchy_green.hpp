#pragma once

#include <span>
#include <vector>

#include "jdisc/disc_function.hpp"

namespace jdisc {

/// Solid Cauchy transform on the unit disc,
///
///   Tg(zeta) = (1 / 2 pi i) \int_D g(w) dw ^ dw-bar / (w - zeta),
///
/// evaluated mode by mode. For g = sum_k g_k(r) e^{ik theta} the k-th mode
/// of g feeds mode k-1 of Tg:
///
///   k <= 0 :  2 \int_0^rho g_k(r) (r/rho)^{1-k} dr
///   k >= 1 : -2 \int_rho^1 g_k(r) (rho/r)^{k-1} dr
///
/// Outside the disc only the k <= 0 modes survive, Tg = sum a_k zeta^{k-1},
/// which is the holomorphic exterior representation used for the reflected
/// term conj(Tg(1 / conj zeta)). The radial integrals act on the Lagrange
/// interpolant of g_k through the interior radial nodes and are done with
/// Gauss-Legendre rules that are exact for the inner kernels; the weights for
/// every ring radius are tabulated once per grid.
class CauchyGreenKernel {
 public:
  explicit CauchyGreenKernel(const DiscGrid& grid);

  // Tg on every ring. Only the interior rings of g are read.
  DiscFunction apply(const DiscFunction& g) const;
  // conj(Tg(1/conj zeta)) on every ring; holomorphic in the disc, 0 at the origin.
  DiscFunction reflected(const DiscFunction& g) const;
  // Tg - conj(Tg(1/conj zeta)); its boundary ring is purely imaginary by construction.
  DiscFunction symmetrized(const DiscFunction& g) const;

  // Pointwise Tg anywhere in C (exterior expansion for |zeta| >= 1).
  cd evaluate(const DiscFunction& g, cd zeta) const;
  cd evaluate_reflected(const DiscFunction& g, cd zeta) const;
  cd value_at_origin(const DiscFunction& g) const;
  cd d_zeta_at_origin(const DiscFunction& g) const;

  // Coefficients a_k (indexed by FFT slot of k, zero for k >= 1) of the exterior expansion.
  std::vector<cd> exterior_coefficients(const DiscFunction& g) const;

 private:
  std::vector<std::vector<cd>> interior_modes(const DiscFunction& g) const;
  // Weights (slot-major, M per slot) mapping interior samples of mode k to mode k-1 of Tg at radius rho.
  void radius_weights(double rho, std::span<double> out) const;
  std::vector<cd> ring_modes(const std::vector<std::vector<cd>>& modes, std::span<const double> w) const;
  bool dropped(int wavenumber) const { return wavenumber <= 1 - n_ / 2; }

  const DiscGrid& grid_;
  int n_;
  int m_;
  std::vector<double> inner_nodes_, inner_weights_;
  std::vector<double> outer_nodes_, outer_weights_;
  std::vector<double> table_;  // [ring][slot][m]
};

}  // namespace jdisc
