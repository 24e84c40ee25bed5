#include "jdisc/disc_solver.hpp"

#include <cmath>

#include "jdisc/cauchy_green.hpp"

namespace jdisc {

EdgeProfile::EdgeProfile(BoundaryFunction phi)
    : phi_(std::move(phi)), schwarz_(std::make_shared<DiscFunction>(schwarz_transform(phi_))) {}

EdgeProfile EdgeProfile::standard(GridPtr grid) {
  return from_function(std::move(grid), [](double t) { return t > kPi ? -std::pow(std::sin(t), 4) : 0.0; });
}

EdgeProfile EdgeProfile::from_function(GridPtr grid, const std::function<double(double)>& phi) {
  auto b = BoundaryFunction::from_function(grid, [&](double t) { return cd(phi(t)); });
  const int n = grid->boundary_count();
  for (int k = 0; k < n; ++k) {
    const double v = b[k].real();
    if (grid->on_upper_arc(k) && v != 0.0) throw InvalidArgument("edge profile must vanish on the upper arc");
    if (!grid->on_upper_arc(k) && !(v < 0.0)) throw InvalidArgument("edge profile must be negative on the lower arc");
  }
  return EdgeProfile(std::move(b));
}

namespace {

void check_params(const DiscParameters& p, bool strict_t) {
  if (p.c.size() != p.t.size()) throw InvalidArgument("c and t must have the same length");
  if (p.c.size() < 1) throw InvalidArgument("dimension must be at least 2");
  for (Eigen::Index j = 0; j < p.t.size(); ++j) {
    if (strict_t ? !(p.t(j) > 0.0) : !(p.t(j) >= 0.0)) throw InvalidArgument("t_j must be positive");
    if (!std::isfinite(p.c(j))) throw InvalidArgument("c_j must be finite");
  }
  if (!(p.lambda >= 0.0)) throw InvalidArgument("lambda must be non-negative");
}

DiscMap model_map(const DiscParameters& p, const EdgeProfile& profile) {
  DiscMap z;
  for (int j = 0; j < p.dimension(); ++j) {
    DiscFunction f = cd(p.t_of(j)) * profile.schwarz();
    f += cd(0.0, p.c_of(j));
    z.push_back(std::move(f));
  }
  return z;
}

void diagnose(DiscSolution& s, const ComplexMatrixField& A) {
  s.attachment_error = attachment_error(s.z);
  s.cr_residual = cauchy_riemann_residual(s.z, A, s.params.lambda);
  s.wedge_violations = wedge_violations(s.z);
}

ComplexMatrixField structure_at(const ComplexMatrixField& A, double lambda) {
  return lambda == 0.0 ? ComplexMatrixField::zero(A.dimension()) : dilate_structure(A, lambda);
}

}  // namespace

DiscSolution model_disc(const DiscParameters& params, const EdgeProfile& profile) {
  check_params(params, true);
  DiscSolution s;
  s.params = params;
  s.params.lambda = 0.0;
  s.z = model_map(params, profile);
  s.attachment_error = attachment_error(s.z);
  s.wedge_violations = wedge_violations(s.z);
  return s;
}

DiscMap bishop_rhs(const DiscMap& z, const DiscParameters& params, const ComplexMatrixField& A,
                   const EdgeProfile& profile) {
  check_params(params, false);
  const int n = params.dimension();
  if (static_cast<int>(z.size()) != n || A.dimension() != n) throw InvalidArgument("dimension mismatch");
  DiscMap h = model_map(params, profile);
  if (params.lambda == 0.0 || A.is_zero()) return h;

  const auto& grid = profile.grid();
  const ComplexMatrixField Al = dilate_structure(A, params.lambda);
  DiscMap dz;
  for (const auto& f : z) dz.push_back(f.d_zeta());
  DiscMap g(n, DiscFunction(grid));
  CVector zn(n), dzn(n);
  for (int r = 0; r < grid->ring_count(); ++r)
    for (int k = 0; k < grid->boundary_count(); ++k) {
      for (int j = 0; j < n; ++j) {
        zn(j) = z[j](r, k);
        dzn(j) = std::conj(dz[j](r, k));
      }
      if (!Al.contains(zn)) throw DomainEscape("disc left the chart (lambda or parameters too large)");
      const CVector gv = Al(zn) * dzn;
      for (int j = 0; j < n; ++j) g[j](r, k) = gv(j);
    }
  const auto& kernel = grid->cauchy_green();
  for (int j = 0; j < n; ++j) h[j] += kernel.symmetrized(g[j]);
  return h;
}

DiscSolution solve_disc_from(const DiscParameters& params, const ComplexMatrixField& A, const EdgeProfile& profile,
                             DiscMap seed, const SolverOptions& opts) {
  check_params(params, false);
  if (params.lambda > opts.lambda_max) throw InvalidArgument("lambda exceeds the configured maximum");
  FixedPointOptions fp = opts.fixed_point;
  fp.tol = opts.tol;
  auto h = [&](const DiscMap& z) { return bishop_rhs(z, params, A, profile); };
  FixedPointResult r = solve_fixed_point(h, std::move(seed), fp);
  DiscSolution s;
  s.params = params;
  s.z = std::move(r.z);
  s.residual = r.residual;
  s.picard_iterations = r.picard_iterations;
  s.newton_iterations = r.newton_iterations;
  s.contraction = r.contraction;
  diagnose(s, A);
  return s;
}

DiscSolution solve_disc(const DiscParameters& params, const ComplexMatrixField& A, const EdgeProfile& profile,
                        const SolverOptions& opts) {
  check_params(params, false);
  if (params.lambda > opts.lambda_max) throw InvalidArgument("lambda exceeds the configured maximum");
  DiscSolution s;
  s.params = params;
  s.z = model_map(params, profile);
  if (params.lambda == 0.0 || A.is_zero()) {
    s.residual = sup_distance(bishop_rhs(s.z, params, A, profile), s.z);
    diagnose(s, A);
    return s;
  }
  const DiscMap model = s.z;
  const int K = std::max(1, opts.continuation_steps);
  int picard = 0, newton = 0;
  std::vector<double> distance;
  for (int k = 1; k <= K; ++k) {
    DiscParameters step = params;
    step.lambda = params.lambda * (static_cast<double>(k) / K) * (static_cast<double>(k) / K);
    SolverOptions o = opts;
    if (k < K) o.tol = std::max(opts.tol, 1e-6);
    s = solve_disc_from(step, A, profile, std::move(s.z), o);
    picard += s.picard_iterations;
    newton += s.newton_iterations;
    distance.push_back(sup_distance(s.z, model));
  }
  s.picard_iterations = picard;
  s.newton_iterations = newton;
  s.continuation_distance = std::move(distance);
  return s;
}

double cauchy_riemann_residual(const DiscMap& z, const ComplexMatrixField& A, double lambda) {
  const int n = static_cast<int>(z.size());
  const auto& grid = z.front().grid();
  const ComplexMatrixField Al = structure_at(A, lambda);
  DiscMap dz, dzb;
  for (const auto& f : z) {
    dz.push_back(f.d_zeta());
    dzb.push_back(f.d_zetabar());
  }
  double worst = 0.0;
  CVector zn(n), dzn(n), dzbn(n);
  for (int r = 0; r < grid->radial_count(); ++r)
    for (int k = 0; k < grid->boundary_count(); ++k) {
      for (int j = 0; j < n; ++j) {
        zn(j) = z[j](r, k);
        dzn(j) = std::conj(dz[j](r, k));
        dzbn(j) = dzb[j](r, k);
      }
      const CVector res = Al.is_zero() ? dzbn : CVector(dzbn - Al(zn) * dzn);
      worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
  return worst;
}

double attachment_error(const DiscMap& z) {
  const auto& grid = z.front().grid();
  const int b = grid->radial_count();
  double worst = 0.0;
  for (const auto& f : z)
    for (int k = 0; k < grid->upper_arc_count(); ++k) worst = std::max(worst, std::abs(f(b, k).real()));
  return worst;
}

int wedge_violations(const DiscMap& z) {
  const auto& grid = z.front().grid();
  const int b = grid->radial_count();
  int count = 0;
  for (int r = 0; r < grid->ring_count(); ++r)
    for (int k = 0; k < grid->boundary_count(); ++k) {
      const bool edge = r == b && grid->on_upper_arc(k);
      for (const auto& f : z) {
        const double x = f(r, k).real();
        if (edge ? x > 0.0 : !(x < 0.0)) {
          ++count;
          break;
        }
      }
    }
  return count;
}

}  // namespace jdisc
