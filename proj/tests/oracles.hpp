#pragma once

// Independent reference computations used only by the test suites. Nothing
// here calls into the spectral operators it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// Trapezoid rule for (1/2 pi) \int_0^{2 pi} f.
inline cd circle_mean(const std::function<cd(double)>& f, int samples) {
  cd acc = 0.0;
  for (int j = 0; j < samples; ++j) acc += f(2.0 * pi * j / samples);
  return acc / static_cast<double>(samples);
}

// Cauchy integral (1/2 pi i) \oint f(w) dw / (w - z) by the trapezoid rule.
inline cd cauchy_integral(const std::function<cd(cd)>& f, cd z, int samples) {
  return circle_mean(
      [&](double t) {
        const cd w = std::polar(1.0, t);
        return f(w) * w / (w - z);
      },
      samples);
}

// Poisson integral of the arc indicator by adaptive Gauss-Kronrod.
inline double poisson_arc(cd z, double a, double b) {
  const double r = std::abs(z), phi = std::arg(z);
  auto kernel = [&](double t) { return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(t - phi) + r * r) / (2.0 * pi); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(kernel, a, b, 15, 1e-14);
}

// -(1/pi) \int_D g(w) / (w - z) dA on a polar grid (midpoint in r, trapezoid
// in angle) with the angle grid staggered off z. Low order; for loose checks.
inline cd solid_cauchy(const std::function<cd(cd)>& g, cd z, int radial, int angular) {
  cd acc = 0.0;
  const double dr = 1.0 / radial, dt = 2.0 * pi / angular;
  const double offset = std::arg(z) + 0.5 * dt;
  for (int i = 0; i < radial; ++i) {
    const double r = (i + 0.5) * dr;
    for (int j = 0; j < angular; ++j) {
      const cd w = std::polar(r, offset + j * dt);
      acc += g(w) / (w - z) * r * dr * dt;
    }
  }
  return -acc / pi;
}

// Forward-difference d/d(zeta-bar) with step h: (D_x F + i D_y F) / 2.
inline cd dbar_forward(const std::function<cd(cd)>& F, cd z, double h) {
  const cd f0 = F(z);
  return 0.5 * ((F(z + h) - f0) / h + cd(0.0, 1.0) * (F(z + cd(0.0, h)) - f0) / h);
}

// Fourth-order central-difference d/d(zeta-bar).
inline cd dbar_central4(const std::function<cd(cd)>& F, cd z, double h) {
  auto d = [&](cd e) {
    return (-F(z + 2.0 * e) + 8.0 * F(z + e) - 8.0 * F(z - e) + F(z - 2.0 * e)) / (12.0 * h);
  };
  return 0.5 * (d(h) + cd(0.0, 1.0) * d(cd(0.0, h)));
}

// T(w^p wbar^q) in closed form inside the disc.
inline cd cauchy_green_monomial(int p, int q, cd z) {
  cd v = std::pow(z, p) * std::pow(std::conj(z), q + 1) / static_cast<double>(q + 1);
  if (p > q) v -= std::pow(z, p - q - 1) / static_cast<double>(q + 1);
  return v;
}


// d/dz_l of a matrix-valued function by Richardson-extrapolated second-order
// central differences (steps h and h/2).
template <class F>
Eigen::MatrixXcd matrix_d_z(F&& f, const Eigen::VectorXcd& z, int l, double h) {
  auto partial = [&](cd dir, double s) {
    Eigen::VectorXcd a = z, b = z;
    a(l) += s * dir;
    b(l) -= s * dir;
    return Eigen::MatrixXcd((f(a) - f(b)) / (2.0 * s));
  };
  auto rich = [&](cd dir) { return Eigen::MatrixXcd((4.0 * partial(dir, 0.5 * h) - partial(dir, h)) / 3.0); };
  return 0.5 * (rich(1.0) - cd(0.0, 1.0) * rich(cd(0.0, 1.0)));
}

template <class F>
Eigen::MatrixXcd matrix_d_zbar(F&& f, const Eigen::VectorXcd& z, int l, double h) {
  auto partial = [&](cd dir, double s) {
    Eigen::VectorXcd a = z, b = z;
    a(l) += s * dir;
    b(l) -= s * dir;
    return Eigen::MatrixXcd((f(a) - f(b)) / (2.0 * s));
  };
  auto rich = [&](cd dir) { return Eigen::MatrixXcd((4.0 * partial(dir, 0.5 * h) - partial(dir, h)) / 3.0); };
  return 0.5 * (rich(1.0) + cd(0.0, 1.0) * rich(cd(0.0, 1.0)));
}

// Singular values in extended precision.
inline Eigen::Matrix<long double, Eigen::Dynamic, 1> singular_values_ld(const Eigen::MatrixXd& m) {
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> a = m.cast<long double>();
  return Eigen::JacobiSVD<decltype(a)>(a).singularValues();
}


// Conjugate function (1 / 2 pi) \int_a^b phi(s) cot((theta - s) / 2) ds for
// data supported on [a, b] and theta outside (a, b).
inline double conjugate_function(const std::function<double(double)>& phi, double theta, double a, double b) {
  auto f = [&](double s) {
    const double t = std::tan(0.5 * (theta - s));
    return t == 0.0 ? 0.0 : phi(s) / t;
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14) / (2.0 * pi);
}

}  // namespace oracle
