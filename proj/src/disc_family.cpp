#include "jdisc/disc_family.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/LU>

#include "jdisc/fourier.hpp"

namespace jdisc {

DiscFamily::DiscFamily(ParameterGrid grid, int n, double lambda, ComplexMatrixField A, EdgeProfile profile,
                       SolverOptions opts)
    : grid_(std::move(grid)), n_(n), lambda_(lambda), a_(std::move(A)), profile_(std::move(profile)),
      opts_(std::move(opts)) {
  if (n < 2) throw InvalidArgument("families need n >= 2");
  if (grid_.c_values.empty() || grid_.t_values.empty()) throw InvalidArgument("empty parameter grid");
  for (double t : grid_.t_values)
    if (!(t > 0.0)) throw InvalidArgument("t values must be positive");
  for (std::size_t i = 1; i < grid_.c_values.size(); ++i)
    if (!(grid_.c_values[i] > grid_.c_values[i - 1])) throw InvalidArgument("c values must increase");
  for (std::size_t i = 1; i < grid_.t_values.size(); ++i)
    if (!(grid_.t_values[i] > grid_.t_values[i - 1])) throw InvalidArgument("t values must increase");

  const int m = n - 1;
  const int nc = static_cast<int>(grid_.c_values.size()), nt = static_cast<int>(grid_.t_values.size());
  std::vector<int> ci(m, 0), ti(m, 0);
  while (true) {
    FamilyMember mem;
    mem.params.c.resize(m);
    mem.params.t.resize(m);
    mem.params.lambda = lambda;
    for (int j = 0; j < m; ++j) {
      mem.params.c(j) = grid_.c_values[ci[j]];
      mem.params.t(j) = grid_.t_values[ti[j]];
    }
    mem.c_index = ci;
    mem.t_index = ti;
    members_.push_back(std::move(mem));
    // Odometer over (t, c) with c varying fastest.
    int pos = 0;
    for (; pos < 2 * m; ++pos) {
      int& idx = pos < m ? ci[pos] : ti[pos - m];
      const int lim = pos < m ? nc : nt;
      if (++idx < lim) break;
      idx = 0;
    }
    if (pos == 2 * m) break;
  }
}

double DiscFamily::failure_rate() const {
  int failed = 0;
  for (const auto& m : members_) failed += !m.solved;
  return static_cast<double>(failed) / members_.size();
}

bool DiscFamily::in_box(const DiscParameters& p, double slack) const {
  const double c_lo = grid_.c_values.front(), c_hi = grid_.c_values.back();
  const double t_lo = grid_.t_values.front(), t_hi = grid_.t_values.back();
  const double sc = slack * std::max(1.0, c_hi - c_lo), st = slack * std::max(1.0, t_hi - t_lo);
  for (Eigen::Index j = 0; j < p.c.size(); ++j) {
    if (p.c(j) < c_lo - sc || p.c(j) > c_hi + sc) return false;
    if (p.t(j) < t_lo - st || p.t(j) > t_hi + st) return false;
  }
  return true;
}

int DiscFamily::find(const std::vector<int>& c_index, const std::vector<int>& t_index) const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i].c_index == c_index && members_[i].t_index == t_index) return static_cast<int>(i);
  return -1;
}

std::vector<int> DiscFamily::neighbours(int member) const {
  std::vector<int> out;
  const auto& m = members_.at(member);
  for (int which = 0; which < 2; ++which)
    for (std::size_t j = 0; j < m.c_index.size(); ++j)
      for (int step : {-1, 1}) {
        auto ci = m.c_index;
        auto ti = m.t_index;
        (which == 0 ? ci : ti)[j] += step;
        const int k = find(ci, ti);
        if (k >= 0 && members_[k].solved) out.push_back(k);
      }
  return out;
}

int DiscFamily::nearest_member(const DiscParameters& p) const {
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!members_[i].solved) continue;
    const double d = (members_[i].params.c - p.c).squaredNorm() + (members_[i].params.t - p.t).squaredNorm();
    if (d < bd) {
      bd = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

void DiscFamily::build_index(int ring_stride, int angle_stride) {
  samples_.clear();
  const auto& grid = profile_.grid();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!members_[i].solved) continue;
    const auto& z = members_[i].solution.z;
    for (int r = ring_stride / 2; r < grid->ring_count(); r += ring_stride)
      for (int k = 0; k < grid->boundary_count(); k += angle_stride)
        samples_.push_back({value_at(z, r, k), static_cast<int>(i), grid->node(r, k)});
  }
}

const FamilySample* DiscFamily::nearest_sample(const CVector& point) const {
  const FamilySample* best = nullptr;
  double bd = std::numeric_limits<double>::infinity();
  for (const auto& s : samples_) {
    const double d = (s.point - point).squaredNorm();
    if (d < bd) {
      bd = d;
      best = &s;
    }
  }
  return best;
}

DiscFamily solve_family(const ParameterGrid& grid, int n, const ComplexMatrixField& A, const EdgeProfile& profile,
                        double lambda, const SolverOptions& opts, int threads) {
  DiscFamily family(grid, n, lambda, A, profile, opts);
  auto& members = family.members();
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < members.size(); i += stride) {
      auto& m = members[i];
      try {
        m.solution = lambda == 0.0 ? model_disc(m.params, profile) : solve_disc(m.params, A, profile, opts);
        m.solved = true;
      } catch (const Error& e) {
        m.failure = e.what();
      }
    }
  };
  std::size_t count = threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  count = std::min(count, members.size());
  if (count <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < count; ++w) pool.emplace_back(work, w, count);
    for (auto& t : pool) t.join();
  }
  if (family.failure_rate() > 0.1)
    throw FamilyFailure("more than 10% of the disc family failed to solve");
  family.build_index();
  return family;
}

CVector model_image(const EdgeProfile& profile, const DiscParameters& p, cd zeta) {
  const cd s = profile.schwarz_at(zeta);
  CVector z(p.dimension());
  for (int j = 0; j < p.dimension(); ++j) z(j) = p.t_of(j) * s + cd(0.0, p.c_of(j));
  return z;
}

namespace {

// Newton for S phi(zeta) = w inside the closed disc.
std::optional<cd> invert_schwarz(const EdgeProfile& profile, cd w, cd guess) {
  cd z = guess;
  for (int it = 0; it < 60; ++it) {
    const cd f = profile.schwarz_at(z) - w;
    if (std::abs(f) <= 1e-15 * (1.0 + std::abs(w))) return z;
    const cd d = profile.schwarz_derivative_at(z);
    if (std::abs(d) == 0.0) return std::nullopt;
    cd step = f / d;
    // Keep the iterate in the closed disc.
    while (std::abs(z - step) > 1.0 && std::abs(step) > 1e-16) step *= 0.5;
    z -= step;
    if (std::abs(step) <= 1e-15) return z;
  }
  return std::nullopt;
}

// Model Jacobian of (c, t, xi, eta) -> z in real coordinates.
RMatrix model_jacobian(const EdgeProfile& profile, const DiscParameters& p, cd zeta) {
  const int n = p.dimension(), m = n - 1;
  const cd s = profile.schwarz_at(zeta), ds = profile.schwarz_derivative_at(zeta);
  RMatrix J = RMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const cd dxi = p.t_of(j) * ds, deta = kI * p.t_of(j) * ds;
    J(2 * j, 2 * m) = dxi.real();
    J(2 * j + 1, 2 * m) = dxi.imag();
    J(2 * j, 2 * m + 1) = deta.real();
    J(2 * j + 1, 2 * m + 1) = deta.imag();
    if (j > 0) {
      J(2 * j + 1, j - 1) = 1.0;          // d/dc_j
      J(2 * j, m + j - 1) = s.real();     // d/dt_j
      J(2 * j + 1, m + j - 1) = s.imag();
    }
  }
  return J;
}

// z(c, t) at continuous parameters: exact model part plus interpolated correction.
void shift_model_part(const EdgeProfile& profile, DiscMap& seed, const DiscParameters& from, const DiscParameters& to) {
  const auto& sphi = profile.schwarz();
  for (int j = 0; j < to.dimension(); ++j) {
    seed[j] += cd(to.t_of(j) - from.t_of(j)) * sphi;
    seed[j] += kI * (to.c_of(j) - from.c_of(j));
  }
}

class ContinuousDisc {
 public:
  explicit ContinuousDisc(const DiscFamily& f) : family_(f) {}

  // Returns false when the disc cannot be solved.
  bool set(const DiscParameters& p, int& solves) {
    const bool perturbed = family_.lambda() > 0.0 && !family_.structure().is_zero();
    params_ = p;
    correction_.clear();
    if (!perturbed) return true;
    DiscMap seed;
    DiscParameters from;
    if (!last_.empty()) {
      seed = last_;
      from = last_params_;
    } else {
      const int k = family_.nearest_member(p);
      if (k < 0) return false;
      seed = family_.members()[k].solution.z;
      from = family_.members()[k].params;
    }
    shift_model_part(family_.profile(), seed, from, p);
    try {
      DiscSolution s = solve_disc_from(p, family_.structure(), family_.profile(), std::move(seed), family_.options());
      ++solves;
      last_ = s.z;
      last_params_ = p;
      for (int j = 0; j < p.dimension(); ++j) {
        DiscFunction w = cd(p.t_of(j)) * family_.profile().schwarz();
        w += cd(0.0, p.c_of(j));
        correction_.emplace_back(s.z[j] - w);
      }
      return true;
    } catch (const Error&) {
      last_.clear();
      return false;
    }
  }

  CVector operator()(cd zeta) const {
    CVector z = model_image(family_.profile(), params_, zeta);
    for (std::size_t j = 0; j < correction_.size(); ++j) z(j) += correction_[j](zeta);
    return z;
  }

  CVector boundary(double theta) const {
    CVector z = model_image(family_.profile(), params_, std::polar(1.0, theta));
    for (std::size_t j = 0; j < correction_.size(); ++j) z(j) += correction_[j](std::polar(1.0, theta));
    return z;
  }

 private:
  const DiscFamily& family_;
  DiscParameters params_;
  DiscParameters last_params_;
  DiscMap last_;
  std::vector<DiscInterpolant> correction_;
};

}  // namespace

DiscSolution disc_at(const DiscFamily& family, const DiscParameters& p) {
  if (family.lambda() == 0.0 || family.structure().is_zero()) return model_disc(p, family.profile());
  const int k = family.nearest_member(p);
  if (k < 0) throw FamilyFailure("family has no solved member");
  DiscMap seed = family.members()[k].solution.z;
  shift_model_part(family.profile(), seed, family.members()[k].params, p);
  return solve_disc_from(p, family.structure(), family.profile(), std::move(seed), family.options());
}

std::optional<std::pair<DiscParameters, cd>> model_inverse(const EdgeProfile& profile, const CVector& point,
                                                           cd zeta_guess) {
  const int n = static_cast<int>(point.size());
  if ((point.real().array() >= 0.0).any()) return std::nullopt;
  DiscParameters p;
  p.c.resize(n - 1);
  p.t.resize(n - 1);
  const double x1 = point(0).real(), y1 = point(0).imag();
  for (int j = 1; j < n; ++j) {
    p.t(j - 1) = point(j).real() / x1;
    p.c(j - 1) = point(j).imag() - y1 * p.t(j - 1);
  }
  auto zeta = invert_schwarz(profile, point(0), zeta_guess);
  if (!zeta) return std::nullopt;
  return std::make_pair(p, *zeta);
}

Location evaluation_map(const DiscFamily& family, const CVector& point, double tol) {
  Location loc;
  const int n = family.dimension();
  if (point.size() != n) throw InvalidArgument("point dimension mismatch");
  if ((point.real().array() >= 0.0).any()) return loc;

  // Seed: explicit model inverse, else the nearest stored sample.
  const FamilySample* near = family.nearest_sample(point);
  cd guess = near ? near->zeta : cd(-0.3, 0.0);
  DiscParameters p;
  cd zeta;
  if (auto inv = model_inverse(family.profile(), point, guess)) {
    p = inv->first;
    zeta = inv->second;
  } else if (near) {
    p = family.members()[near->member].params;
    zeta = near->zeta;
  } else {
    return loc;
  }
  p.lambda = family.lambda();
  if (p.t.minCoeff() <= 0.0) return loc;

  ContinuousDisc disc(family);
  const double scale = 1.0 + point.norm();
  for (int it = 0; it < 40; ++it) {
    if (!disc.set(p, loc.solves)) return loc;
    const RVector F = to_real(disc(zeta) - point);
    loc.error = F.norm();
    if (loc.error <= tol * scale) {
      loc.params = p;
      loc.zeta = zeta;
      loc.covered = std::abs(zeta) < 1.0 && family.in_box(p);
      return loc;
    }
    Eigen::PartialPivLU<RMatrix> lu(model_jacobian(family.profile(), p, zeta));
    const RVector d = lu.solve(F);
    const int m = n - 1;
    for (int j = 0; j < m; ++j) {
      p.c(j) -= d(j);
      p.t(j) -= d(m + j);
    }
    zeta -= cd(d(2 * m), d(2 * m + 1));
    if (std::abs(zeta) > 1.0) zeta /= std::abs(zeta);
    if (p.t.minCoeff() <= 0.0) return loc;
  }
  return loc;
}

Location locate_on_edge(const DiscFamily& family, const CVector& point, const RVector& t, double tol) {
  Location loc;
  const int n = family.dimension();
  if (point.size() != n || t.size() != n - 1) throw InvalidArgument("dimension mismatch");
  if (point.real().cwiseAbs().maxCoeff() > tol) return loc;
  const auto& profile = family.profile();
  auto psi = [&](double th) { return profile.schwarz_at(std::polar(1.0, th)).imag(); };
  auto dpsi = [&](double th) {
    const cd z = std::polar(1.0, th);
    return (kI * z * profile.schwarz_derivative_at(z)).imag();
  };
  // Seed theta from the sign change of psi - y1 on the upper-arc nodes.
  const double y1 = point(0).imag();
  const auto& grid = profile.grid();
  double theta = -1.0;
  for (int k = 0; k + 1 < grid->upper_arc_count(); ++k) {
    const double a = psi(grid->angle(k)) - y1, b = psi(grid->angle(k + 1)) - y1;
    if (a == 0.0 || (a < 0.0) != (b < 0.0)) {
      theta = grid->angle(k) + (b == a ? 0.0 : grid->spacing() * a / (a - b));
      break;
    }
  }
  if (theta < 0.0) return loc;
  DiscParameters p;
  p.t = t;
  p.lambda = family.lambda();
  p.c.resize(n - 1);
  for (int j = 1; j < n; ++j) p.c(j - 1) = point(j).imag() - t(j - 1) * y1;

  ContinuousDisc disc(family);
  for (int it = 0; it < 40; ++it) {
    if (!disc.set(p, loc.solves)) return loc;
    const CVector z = disc.boundary(theta);
    RVector F(n);
    for (int j = 0; j < n; ++j) F(j) = z(j).imag() - point(j).imag();
    loc.error = F.norm();
    if (loc.error <= tol * (1.0 + point.norm())) {
      loc.params = p;
      loc.zeta = std::polar(1.0, theta);
      loc.covered = theta >= 0.0 && theta <= kPi && family.in_box(p);
      return loc;
    }
    // Model Jacobian in (c, theta).
    RMatrix J = RMatrix::Zero(n, n);
    const double dp = dpsi(theta);
    for (int j = 0; j < n; ++j) {
      J(j, n - 1) = p.t_of(j) * dp;
      if (j > 0) J(j, j - 1) = 1.0;
    }
    const RVector d = J.partialPivLu().solve(F);
    for (int j = 0; j < n - 1; ++j) p.c(j) -= d(j);
    theta = std::clamp(theta - d(n - 1), -0.5, kPi + 0.5);
  }
  return loc;
}

}  // namespace jdisc
