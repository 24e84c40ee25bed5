#include "jdisc/levi_form.hpp"

#include <Eigen/QR>

#include "finite_difference.hpp"
#include "jdisc/cauchy_green.hpp"

namespace jdisc {

DiscMap levi_disc(const ComplexMatrixField& A, const CVector& p, const CVector& V, GridPtr grid, double scale,
                  const FixedPointOptions& opts) {
  const int n = A.dimension();
  if (p.size() != n || V.size() != n) throw InvalidArgument("point and vector must have dimension n");
  if (!(scale > 0.0)) throw InvalidArgument("scale must be positive");
  DiscMap w0;
  for (int j = 0; j < n; ++j) w0.push_back(DiscFunction::from_function(grid, [&](cd z) { return V(j) * z; }));
  if (A.is_zero()) return w0;

  const auto& kernel = grid->cauchy_green();
  auto h = [&](const DiscMap& w) {
    DiscMap dw;
    for (const auto& f : w) dw.push_back(f.d_zeta());
    DiscMap g(n, DiscFunction(grid));
    CVector zn(n), dzn(n);
    for (int r = 0; r < grid->ring_count(); ++r)
      for (int k = 0; k < grid->boundary_count(); ++k) {
        for (int j = 0; j < n; ++j) {
          zn(j) = p(j) + scale * w[j](r, k);
          dzn(j) = std::conj(dw[j](r, k));
        }
        if (!A.contains(zn)) throw DomainEscape("Levi disc left the structure's domain");
        const CVector gv = A(zn) * dzn;
        for (int j = 0; j < n; ++j) g[j](r, k) = gv(j);
      }
    DiscMap out;
    for (int j = 0; j < n; ++j) {
      DiscFunction t = kernel.apply(g[j]);
      const cd coef = V(j) - kernel.d_zeta_at_origin(g[j]) - DiscInterpolant(g[j])(0.0);
      t += -kernel.value_at_origin(g[j]);
      t += coef * DiscFunction::from_function(grid, [](cd z) { return z; });
      out.push_back(std::move(t));
    }
    return out;
  };
  return solve_fixed_point(h, std::move(w0), opts).z;
}

double levi_form(const ScalarField& u, const ComplexMatrixField& A, const CVector& p, const CVector& V,
                 const LeviOptions& opts) {
  auto grid = DiscGrid::create(opts.boundary_nodes, opts.radial_nodes);
  const DiscMap w = levi_disc(A, p, V, grid, opts.scale, opts.solver);
  const int n = A.dimension();

  // Ring means of u o f are even polynomials in the radius.
  std::vector<double> radii, means;
  CVector z(n);
  for (int r = 0; r < grid->radial_count() && grid->ring_radius(r) <= 0.6; ++r) {
    double sum = 0.0;
    for (int k = 0; k < grid->boundary_count(); ++k) {
      for (int j = 0; j < n; ++j) z(j) = p(j) + opts.scale * w[j](r, k);
      sum += u(z);
    }
    radii.push_back(grid->ring_radius(r));
    means.push_back(sum / grid->boundary_count());
  }
  const int cols = 4;
  if (static_cast<int>(radii.size()) < cols + 2) throw InvalidArgument("too few rings for the Laplacian fit");
  RMatrix B(radii.size(), cols);
  RVector y(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double s = radii[i] * radii[i];
    double pw = 1.0;
    for (int c = 0; c < cols; ++c, pw *= s) B(i, c) = pw;
    y(i) = means[i];
  }
  const RVector coef = B.colPivHouseholderQr().solve(y);
  return 4.0 * coef(1) / (opts.scale * opts.scale);
}

double standard_levi_form(const ScalarField& u, const CVector& p, const CVector& V, double h) {
  auto along = [&](const CVector& dir) {
    return detail::second_difference([&](double s) { return u(p + s * dir); }, h);
  };
  return along(V) + along(kI * V);
}

}  // namespace jdisc
