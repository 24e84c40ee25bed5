#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "jdisc/disc_grid.hpp"

namespace jdisc {

/// Samples of a function on the N boundary nodes, with Fourier coefficients
/// computed on first request.
class BoundaryFunction {
 public:
  explicit BoundaryFunction(GridPtr grid);
  BoundaryFunction(GridPtr grid, std::vector<cd> values);
  static BoundaryFunction from_function(GridPtr grid, const std::function<cd(double theta)>& f);
  static BoundaryFunction from_coefficients(GridPtr grid, std::span<const cd> coefficients);

  const GridPtr& grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  std::span<const cd> values() const { return values_; }
  cd operator[](int k) const { return values_[k]; }
  const std::vector<cd>& coefficients() const;

  bool is_real(double tol = 0.0) const;

 private:
  GridPtr grid_;
  std::vector<cd> values_;
  mutable std::shared_ptr<const std::vector<cd>> coefficients_;
};

/// Samples of a function on every ring of the disc grid; ring M is the
/// boundary circle.
class DiscFunction {
 public:
  explicit DiscFunction(GridPtr grid);
  static DiscFunction from_function(GridPtr grid, const std::function<cd(cd)>& f);
  static DiscFunction constant(GridPtr grid, cd value);
  // Holomorphic function sum_{k>=0} c_k zeta^k given by its Taylor coefficients.
  static DiscFunction from_power_series(GridPtr grid, std::span<const cd> taylor);

  const GridPtr& grid() const { return grid_; }
  int ring_count() const { return grid_->ring_count(); }
  int boundary_count() const { return grid_->boundary_count(); }

  cd operator()(int ring, int k) const { return values_[index(ring, k)]; }
  cd& operator()(int ring, int k) { return values_[index(ring, k)]; }
  std::span<const cd> ring(int r) const { return {values_.data() + index(r, 0), static_cast<std::size_t>(boundary_count())}; }
  std::span<cd> ring(int r) { return {values_.data() + index(r, 0), static_cast<std::size_t>(boundary_count())}; }
  std::span<const cd> values() const { return values_; }
  std::span<cd> values() { return values_; }

  BoundaryFunction boundary() const;
  void set_boundary(const BoundaryFunction& b);

  // Wirtinger derivatives, spectral in angle and polynomial in radius.
  DiscFunction d_zeta() const;
  DiscFunction d_zetabar() const;

  DiscFunction conj() const;
  DiscFunction real() const;
  DiscFunction imag() const;
  double sup_norm() const;
  double interior_sup_norm() const;

  DiscFunction& operator+=(const DiscFunction& o);
  DiscFunction& operator-=(const DiscFunction& o);
  DiscFunction& operator*=(cd s);
  DiscFunction& operator+=(cd s);
  friend DiscFunction operator+(DiscFunction a, const DiscFunction& b) { return a += b; }
  friend DiscFunction operator-(DiscFunction a, const DiscFunction& b) { return a -= b; }
  friend DiscFunction operator*(cd s, DiscFunction a) { return a *= s; }
  friend DiscFunction operator+(DiscFunction a, cd s) { return a += s; }

 private:
  std::size_t index(int ring, int k) const {
    return static_cast<std::size_t>(ring) * boundary_count() + k;
  }
  // (d/dr, d/dtheta) of every ring.
  void polar_derivatives(DiscFunction& dr, DiscFunction& dtheta) const;

  GridPtr grid_;
  std::vector<cd> values_;
};

/// Pointwise evaluation of a DiscFunction anywhere in the closed disc:
/// trigonometric interpolation on each ring, then Lagrange in radius.
class DiscInterpolant {
 public:
  explicit DiscInterpolant(const DiscFunction& f);
  cd operator()(cd zeta) const;
  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
  std::vector<std::vector<cd>> ring_coefficients_;
};

/// A map from the disc grid into C^n, one DiscFunction per coordinate.
using DiscMap = std::vector<DiscFunction>;

CVector value_at(const DiscMap& z, int ring, int k);
double sup_distance(const DiscMap& a, const DiscMap& b);

}  // namespace jdisc
