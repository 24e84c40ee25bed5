#include "jdisc/disc_operators.hpp"

#include <algorithm>
#include <cmath>

#include "jdisc/fourier.hpp"

namespace jdisc {

namespace {

// Taylor coefficients of K f: slots 0..N/2-1 and the halved Nyquist term.
std::vector<cd> cauchy_taylor(const BoundaryFunction& f) {
  const auto& c = f.coefficients();
  const int n = f.size();
  std::vector<cd> t(n / 2 + 1);
  for (int k = 0; k < n / 2; ++k) t[k] = c[k];
  t[n / 2] = 0.5 * c[n / 2];
  return t;
}

std::vector<cd> schwarz_taylor(const BoundaryFunction& phi) {
  auto t = cauchy_taylor(phi);
  for (auto& v : t) v *= 2.0;
  t[0] -= phi.coefficients()[0];
  return t;
}

cd horner(const std::vector<cd>& taylor, cd zeta) {
  cd acc = 0.0;
  for (auto it = taylor.rbegin(); it != taylor.rend(); ++it) acc = acc * zeta + *it;
  return acc;
}

DiscFunction series_on_grid(const GridPtr& grid, const std::vector<cd>& taylor) {
  const int n = grid->boundary_count();
  DiscFunction out(grid);
  std::vector<cd> modes(n);
  for (int r = 0; r < grid->ring_count(); ++r) {
    const double rho = grid->ring_radius(r);
    std::fill(modes.begin(), modes.end(), cd{});
    double p = 1.0;
    for (int k = 0; k <= n / 2; ++k) {
      // On the nodes zeta^{N/2} e^{...} and the Nyquist slot coincide.
      modes[k] += taylor[k] * p;
      p *= rho;
    }
    auto v = fourier::inverse(modes);
    std::copy(v.begin(), v.end(), out.ring(r).begin());
  }
  return out;
}

}  // namespace

cd average(const BoundaryFunction& phi) { return phi.coefficients()[0]; }

cd cauchy_transform(const BoundaryFunction& f, cd zeta) {
  const double guard = f.grid()->edge_guard();
  if (std::abs(zeta) >= 1.0 - guard)
    throw InvalidArgument("cauchy_transform: point inside the edge guard band");
  return horner(cauchy_taylor(f), zeta);
}

DiscFunction cauchy_transform(const BoundaryFunction& f) { return series_on_grid(f.grid(), cauchy_taylor(f)); }

DiscFunction schwarz_transform(const BoundaryFunction& phi) {
  double scale = 1.0;
  for (cd v : phi.values()) scale = std::max(scale, std::abs(v));
  if (!phi.is_real(1e-12 * scale)) throw InvalidArgument("schwarz_transform: input is not real-valued");
  DiscFunction out = series_on_grid(phi.grid(), schwarz_taylor(phi));
  // Re(S phi) on the circle is phi itself.
  auto b = out.ring(phi.grid()->radial_count());
  for (int k = 0; k < phi.size(); ++k) b[k] = cd(phi[k].real(), b[k].imag());
  return out;
}

cd schwarz_value(const BoundaryFunction& phi, cd zeta) { return horner(schwarz_taylor(phi), zeta); }

cd schwarz_derivative(const BoundaryFunction& phi, cd zeta) {
  const auto t = schwarz_taylor(phi);
  cd acc = 0.0;
  for (std::size_t k = t.size() - 1; k >= 1; --k) acc = acc * zeta + static_cast<double>(k) * t[k];
  return acc;
}

DiscFunction cauchy_green(const DiscFunction& g) { return g.grid()->cauchy_green().apply(g); }

cd reflected_cauchy_green(const DiscFunction& g, cd zeta) {
  return g.grid()->cauchy_green().evaluate_reflected(g, zeta);
}

DiscFunction green_schwarz_reconstruct(const DiscFunction& f) {
  const BoundaryFunction trace = f.boundary();
  std::vector<cd> re(trace.size()), im(trace.size());
  for (int k = 0; k < trace.size(); ++k) {
    re[k] = trace[k].real();
    im[k] = trace[k].imag();
  }
  const GridPtr& grid = f.grid();
  DiscFunction out = schwarz_transform(BoundaryFunction(grid, std::move(re)));
  out += kI * average(BoundaryFunction(grid, std::move(im))).real();
  out += grid->cauchy_green().symmetrized(f.d_zetabar());
  return out;
}

double harmonic_measure(cd zeta, const Arc& arc) {
  if (std::abs(zeta) >= 1.0) throw InvalidArgument("harmonic_measure: point must lie in the open disc");
  const double len = arc.length();
  if (len <= 0.0) return 0.0;
  if (len >= 2.0 * kPi) return 1.0;
  // (angle subtended at zeta) / pi - length / (2 pi)
  double subtended = std::arg((std::polar(1.0, arc.end) - zeta) / (std::polar(1.0, arc.begin) - zeta));
  if (subtended < 0.0) subtended += 2.0 * kPi;
  return std::clamp(subtended / kPi - len / (2.0 * kPi), 0.0, 1.0);
}

}  // namespace jdisc
