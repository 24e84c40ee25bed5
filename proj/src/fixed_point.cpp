#include "jdisc/fixed_point.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace jdisc {

namespace {

RVector flatten(const DiscMap& z) {
  const std::size_t per = z.front().values().size();
  RVector v(2 * per * z.size());
  Eigen::Index i = 0;
  for (const auto& f : z)
    for (cd x : f.values()) {
      v(i++) = x.real();
      v(i++) = x.imag();
    }
  return v;
}

DiscMap shifted(const DiscMap& z, const RVector& d, double s) {
  DiscMap out = z;
  Eigen::Index i = 0;
  for (auto& f : out)
    for (cd& x : f.values()) {
      x += s * cd(d(i), d(i + 1));
      i += 2;
    }
  return out;
}

// Restarted GMRES for op(x) = b from x = 0; stops at relative residual rtol.
RVector gmres(const std::function<RVector(const RVector&)>& op, const RVector& b, double rtol, int restart,
              int max_iterations) {
  RVector x = RVector::Zero(b.size());
  const double bnorm = b.norm();
  if (bnorm == 0.0) return x;
  int total = 0;
  while (total < max_iterations) {
    const RVector r = b - (total == 0 ? RVector::Zero(b.size()) : op(x));
    const double beta = r.norm();
    if (beta <= rtol * bnorm) break;
    const int m = restart;
    RMatrix V(b.size(), m + 1);
    RMatrix H = RMatrix::Zero(m + 1, m);
    V.col(0) = r / beta;
    int k = 0;
    RVector y;
    for (; k < m && total < max_iterations; ++k, ++total) {
      RVector w = op(V.col(k));
      for (int i = 0; i <= k; ++i) {
        H(i, k) = V.col(i).dot(w);
        w -= H(i, k) * V.col(i);
      }
      H(k + 1, k) = w.norm();
      RVector e = RVector::Zero(k + 2);
      e(0) = beta;
      y = H.topLeftCorner(k + 2, k + 1).colPivHouseholderQr().solve(e);
      const double res = (e - H.topLeftCorner(k + 2, k + 1) * y).norm();
      if (H(k + 1, k) > 1e-300) V.col(k + 1) = w / H(k + 1, k);
      if (res <= rtol * bnorm || H(k + 1, k) <= 1e-300) {
        ++k;
        ++total;
        break;
      }
    }
    x += V.leftCols(k) * y.head(k);
    if ((b - op(x)).norm() <= rtol * bnorm) break;
  }
  return x;
}

}  // namespace

FixedPointResult solve_fixed_point(const FixedPointMap& h, DiscMap z0, const FixedPointOptions& opts) {
  if (z0.empty()) throw InvalidArgument("empty disc map");
  FixedPointResult out;
  out.z = std::move(z0);
  DiscMap hz = h(out.z);
  double r = sup_distance(hz, out.z);
  double prev = std::numeric_limits<double>::infinity();
  while (true) {
    if (r <= opts.tol) {
      out.residual = r;
      return out;
    }
    if (std::isfinite(prev)) out.contraction = r / prev;
    if (out.picard_iterations >= opts.max_picard ||
        (out.picard_iterations >= 2 && out.contraction > opts.newton_switch))
      break;
    prev = r;
    out.z = std::move(hz);
    hz = h(out.z);
    r = sup_distance(hz, out.z);
    ++out.picard_iterations;
  }

  // Newton on F(z) = z - h(z) with finite-difference Jacobian-vector products.
  auto residual_vector = [](const DiscMap& z, const DiscMap& hz) { return RVector(flatten(z) - flatten(hz)); };
  RVector F = residual_vector(out.z, hz);
  for (; out.newton_iterations < opts.max_newton; ++out.newton_iterations) {
    const double znorm = flatten(out.z).norm();
    auto jv = [&](const RVector& v) {
      const double vn = v.norm();
      if (vn == 0.0) return RVector(RVector::Zero(v.size()));
      const double eps = 1e-7 * (1.0 + znorm) / vn;
      const DiscMap zp = shifted(out.z, v, eps);
      return RVector((residual_vector(zp, h(zp)) - F) / eps);
    };
    const double forcing = std::min(1e-2, std::max(1e-6, r));
    const RVector d = gmres(jv, -F, forcing, opts.gmres_restart, opts.gmres_max_iterations);
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 6; ++ls, step *= 0.5) {
      DiscMap zn = shifted(out.z, d, step);
      DiscMap hn;
      try {
        hn = h(zn);
      } catch (const DomainEscape&) {
        continue;
      }
      const double rn = sup_distance(hn, zn);
      if (rn < r) {
        out.contraction = rn / r;
        out.z = std::move(zn);
        hz = std::move(hn);
        r = rn;
        F = residual_vector(out.z, hz);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    if (r <= opts.tol) {
      ++out.newton_iterations;
      out.residual = r;
      return out;
    }
  }
  throw NonConvergence("fixed-point iteration did not reach tolerance (residual " + std::to_string(r) + ")",
                       out.contraction);
}

}  // namespace jdisc
