#include "jdisc/psh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace jdisc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double poisson_kernel(cd w, double theta) {
  return (1.0 - std::norm(w)) / std::norm(std::polar(1.0, theta) - w);
}

// Mean of values over a pool disc; zero weights never touch -inf values.
double disc_mean(const PoolDisc& d, const RVector& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < d.boundary.size(); ++i)
    if (d.weights[i] > 0.0) m += d.weights[i] * v(d.boundary[i]);
  return m;
}

// Discrepancy of each disc mean against the mean over every other boundary node.
double pool_grid_error(const EnvelopeState& s) {
  const RVector& v = s.values.front();
  double err = 0.0;
  for (const auto& d : s.pool) {
    double half = 0.0, wsum = 0.0;
    for (std::size_t i = 0; i < d.boundary.size(); i += 2) {
      half += d.weights[i] * v(d.boundary[i]);
      wsum += d.weights[i];
    }
    if (wsum <= 0.0) continue;
    const double diff = std::abs(disc_mean(d, v) - half / wsum);
    if (std::isfinite(diff)) err = std::max(err, diff);
  }
  return err;
}

void validate_pool(const EnvelopeState& s) {
  const int n = static_cast<int>(s.sample_points.size());
  if (static_cast<int>(s.is_center.size()) != n) throw InvalidArgument("envelope: centre flags do not match samples");
  std::vector<char> has(n, 0);
  for (const auto& d : s.pool) {
    if (d.center < 0 || d.center >= n || d.boundary.size() != d.weights.size() || d.boundary.empty())
      throw InvalidArgument("envelope: malformed pool disc");
    double w = 0.0;
    for (std::size_t i = 0; i < d.boundary.size(); ++i) {
      if (d.boundary[i] < 0 || d.boundary[i] >= n || d.weights[i] < 0.0)
        throw InvalidArgument("envelope: malformed pool disc");
      w += d.weights[i];
    }
    if (std::abs(w - 1.0) > 1e-12) throw InvalidArgument("envelope: pool weights must sum to one");
    has[d.center] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (s.is_center[i] && !has[i])
      throw InvalidArgument("envelope: pool has no disc centred at sample " + std::to_string(i));
}

EnvelopeState finish(EnvelopeState s, const RealFunction& v) {
  RVector v0(s.sample_points.size());
  for (std::size_t i = 0; i < s.sample_points.size(); ++i) v0(i) = v(s.sample_points[i]);
  s.values = {v0};
  validate_pool(s);
  s.grid_error = pool_grid_error(s);
  return s;
}

}  // namespace

double RealFunction::operator()(const CVector& z) const {
  if (!f_) throw InvalidArgument("RealFunction: empty evaluator");
  const double v = f_(z);
  if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
    throw InvalidArgument("RealFunction: value must be finite or -inf");
  return v;
}

double RealFunction::sampled_sup(const std::vector<CVector>& points) const {
  double m = kNegInf;
  for (const auto& p : points) m = std::max(m, (*this)(p));
  return m;
}

SubharmonicReport subharmonic_along_disc(const RealFunction& u, const DiscMap& z, const SubharmonicOptions& opts) {
  if (z.empty()) throw InvalidArgument("subharmonic_along_disc: empty disc");
  const auto& grid = z.front().grid();
  std::vector<DiscInterpolant> f;
  for (const auto& c : z) f.emplace_back(c);
  auto eval = [&](cd zeta) {
    CVector p(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) p(j) = f[j](zeta);
    return u(p);
  };

  SubharmonicReport rep;
  rep.margin = std::numeric_limits<double>::infinity();
  const int q = opts.circle_nodes;
  for (int r = opts.ring_stride - 1; r < grid->radial_count(); r += opts.ring_stride) {
    const double r0 = grid->ring_radius(r);
    if (r0 > opts.max_center_radius) break;
    for (int k = 0; k < grid->boundary_count(); k += opts.angle_stride) {
      const cd c = grid->node(r, k);
      const double center = u(value_at(z, r, k));
      if (center == kNegInf) continue;
      for (int i = 1; i <= opts.circles; ++i) {
        const double rho = 0.9 * (1.0 - r0) * i / opts.circles;
        double full = 0.0, half = 0.0;
        for (int l = 0; l < q; ++l) {
          const double val = eval(c + std::polar(rho, 2.0 * kPi * l / q));
          full += val;
          if (l % 2 == 0) half += val;
        }
        full /= q;
        half /= (q + 1) / 2;
        const double margin = full - center;
        if (std::isfinite(full)) rep.grid_error = std::max(rep.grid_error, std::abs(full - half));
        if (margin < rep.margin) {
          rep.margin = margin;
          rep.worst_center = c;
          rep.worst_radius = rho;
        }
      }
    }
  }
  rep.passed = rep.margin >= -5.0 * rep.grid_error;
  return rep;
}

RVector EnvelopeState::last_delta() const {
  if (values.size() < 2) return RVector::Zero(values.front().size());
  RVector d(values.back().size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double a = values[values.size() - 2](i), b = values.back()(i);
    d(i) = a == b ? 0.0 : a - b;
  }
  return d;
}

EnvelopeState linear_disc_pool(const std::vector<CVector>& centers, const std::vector<CVector>& directions,
                               const std::vector<double>& radii, int boundary_nodes, const RealFunction& v) {
  if (centers.empty() || directions.empty() || radii.empty() || boundary_nodes < 2)
    throw InvalidArgument("linear_disc_pool: empty pool");
  EnvelopeState s;
  s.sample_points = centers;
  s.is_center.assign(centers.size(), 1);
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (const auto& w : directions)
      for (double r : radii) {
        PoolDisc d;
        d.center = static_cast<int>(c);
        for (int k = 0; k < boundary_nodes; ++k) {
          d.boundary.push_back(static_cast<int>(s.sample_points.size()));
          d.weights.push_back(1.0 / boundary_nodes);
          s.sample_points.push_back(centers[c] + (r * std::polar(1.0, 2.0 * kPi * k / boundary_nodes)) * w);
          s.is_center.push_back(0);
        }
        s.pool.push_back(std::move(d));
      }
  return finish(std::move(s), v);
}

EnvelopeState family_disc_pool(const DiscFamily& family, const RealFunction& v, int ring_stride, int angle_stride,
                               double max_ratio) {
  const auto& grid = family.profile().grid();
  if (!(max_ratio > 0.0 && max_ratio < 1.0)) throw InvalidArgument("family_disc_pool: ratio must lie in (0, 1)");
  if (ring_stride < 1 || angle_stride < 1 || grid->boundary_count() % angle_stride != 0)
    throw InvalidArgument("family_disc_pool: strides must divide the grid");
  std::vector<int> rings;
  for (int r = ring_stride - 1; r < grid->radial_count(); r += ring_stride) rings.push_back(r);
  rings.push_back(grid->radial_count());
  const int per_ring = grid->boundary_count() / angle_stride;

  EnvelopeState s;
  for (const auto& m : family.members()) {
    if (!m.solved) continue;
    const int base = static_cast<int>(s.sample_points.size());
    for (int r : rings)
      for (int k = 0; k < grid->boundary_count(); k += angle_stride) {
        s.sample_points.push_back(value_at(m.solution.z, r, k));
        s.is_center.push_back(r < grid->radial_count() && grid->ring_radius(r) <= max_ratio ? 1 : 0);
      }
    for (std::size_t i = 0; i + 1 < rings.size(); ++i)
      for (int k = 0; k < per_ring; ++k) {
        const cd a = grid->node(rings[i], k * angle_stride);
        for (std::size_t j = i + 1; j < rings.size(); ++j) {
          const double rj = grid->ring_radius(rings[j]);
          if (std::abs(a) > max_ratio * rj) continue;
          PoolDisc d;
          d.center = base + static_cast<int>(i) * per_ring + k;
          double total = 0.0;
          for (int l = 0; l < per_ring; ++l) {
            d.boundary.push_back(base + static_cast<int>(j) * per_ring + l);
            d.weights.push_back(poisson_kernel(a / rj, grid->angle(l * angle_stride)));
            total += d.weights.back();
          }
          for (double& w : d.weights) w /= total;
          s.pool.push_back(std::move(d));
        }
      }
  }
  if (s.sample_points.empty()) throw FamilyFailure("family_disc_pool: no solved members");
  return finish(std::move(s), v);
}

EnvelopeState disc_envelope_iterate(EnvelopeState state, int steps) {
  if (state.values.empty()) throw InvalidArgument("envelope: state has no initial values");
  validate_pool(state);
  for (int it = 0; it < steps; ++it) {
    const RVector& prev = state.values.back();
    RVector next = prev;
    for (const auto& d : state.pool) next(d.center) = std::min(next(d.center), disc_mean(d, prev));
    state.values.push_back(std::move(next));
  }
  return state;
}

bool is_pool_subharmonic_minorant(const EnvelopeState& state, const RVector& phi, double tol) {
  const RVector& v0 = state.values.front();
  if (phi.size() != v0.size()) throw InvalidArgument("minorant: size mismatch");
  for (Eigen::Index i = 0; i < phi.size(); ++i)
    if (phi(i) > v0(i) + tol) return false;
  for (const auto& d : state.pool)
    if (phi(d.center) > disc_mean(d, phi) + tol) return false;
  return true;
}

RealFunction upper_regularize(const RealFunction& u, double scale, int samples_per_side) {
  if (!(scale > 0.0) || samples_per_side < 1) throw InvalidArgument("upper_regularize: bad scale");
  if (u.regularity() != Regularity::arbitrary) return u;
  auto f = [u, scale, m = samples_per_side](const CVector& z) {
    const RVector x = to_real(z);
    const int d = static_cast<int>(x.size());
    RVector cell(d);
    for (int i = 0; i < d; ++i) cell(i) = std::floor(x(i) / scale);
    double best = u(z);
    std::vector<int> idx(d, 0);
    RVector y(d);
    while (true) {
      for (int i = 0; i < d; ++i) y(i) = (cell(i) + (idx[i] + 0.5) / m) * scale;
      best = std::max(best, u(to_complex(y)));
      int i = 0;
      while (i < d && ++idx[i] == m) idx[i++] = 0;
      if (i == d) break;
    }
    return best;
  };
  return RealFunction(f, Regularity::arbitrary);
}

bool EdgeSet::contains(const CVector& z) const {
  return std::any_of(points.begin(), points.end(), [&](const CVector& p) { return (p - z).norm() <= radius; });
}

MeasureBound p_measure_on_disc(const EdgeSet& K, const DiscMap& z, cd zeta) {
  MeasureBound mb;
  mb.covered = true;
  mb.zeta = zeta;
  if (K.empty()) return mb;
  const auto& grid = z.front().grid();
  const int M = grid->radial_count();
  int start = -1;
  auto close = [&](int end) {
    if (start >= 0 && end > start) {
      const Arc arc{grid->angle(start), grid->angle(end)};
      mb.lower += harmonic_measure(zeta, arc);
      mb.arc_length += arc.length();
    }
    start = -1;
  };
  for (int k = 0; k < grid->upper_arc_count(); ++k) {
    if (K.contains(value_at(z, M, k))) {
      if (start < 0) start = k;
    } else {
      close(k - 1);
    }
  }
  close(grid->upper_arc_count() - 1);
  mb.lower = std::clamp(mb.lower, 0.0, 1.0);
  return mb;
}

MeasureBound p_measure_upper_bound(const EdgeSet& K, const DiscFamily& family, const CVector& query) {
  MeasureBound mb;
  const Location loc = evaluation_map(family, query);
  if (!loc.covered) return mb;
  try {
    const DiscSolution s = disc_at(family, loc.params);
    mb = p_measure_on_disc(K, s.z, loc.zeta);
  } catch (const Error&) {
    return MeasureBound{};
  }
  mb.params = loc.params;
  return mb;
}

TwoConstantsReport two_constants_check(const RealFunction& u, const EdgeSet& K, const DiscFamily& family, double C,
                                       double c, const std::vector<CVector>& points,
                                       const std::vector<CVector>& domain_samples) {
  const double slack_tol = 1e-12 * (1.0 + std::abs(C) + std::abs(c));
  const auto& dom = domain_samples.empty() ? points : domain_samples;
  if (!dom.empty() && u.sampled_sup(dom) > C + slack_tol) throw InvalidArgument("two_constants: u exceeds C");
  if (!K.empty() && upper_regularize(u, K.radius).sampled_sup(K.points) > c + slack_tol)
    throw InvalidArgument("two_constants: u* exceeds c on K");

  TwoConstantsReport rep;
  rep.grid_error = family.profile().grid()->spacing() / (2.0 * kPi) * std::abs(C - c);
  rep.max_violation = -std::numeric_limits<double>::infinity();
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const MeasureBound mb = p_measure_upper_bound(K, family, p);
    if (!mb.covered) {
      ++rep.uncovered;
      continue;
    }
    ++rep.covered;
    const double slack = c * mb.lower + C * (1.0 - mb.lower) - u(p);
    rep.slack.push_back(slack);
    rep.omega.push_back(mb.lower);
    rep.max_violation = std::max(rep.max_violation, -slack);
    rep.min_slack = std::min(rep.min_slack, slack);
    if (-slack > 2.0 * rep.grid_error + slack_tol) ++rep.violations;
  }
  return rep;
}

NonTangentialRegion make_nontangential_region(const WedgeModel& wedge, const CVector& vertex, double alpha,
                                              const std::vector<double>& radii, int draws, std::uint64_t seed) {
  if (alpha < 1.0) throw InvalidArgument("nontangential region: aperture must be >= 1");
  const int n = wedge.dimension();
  if (vertex.size() != n) throw InvalidArgument("nontangential region: dimension mismatch");
  if (wedge.rho(vertex).cwiseAbs().maxCoeff() > 1e-10) throw InvalidArgument("nontangential region: vertex not on E");
  const Chart& chart = wedge.model_chart();
  const CVector wq = chart(vertex);

  NonTangentialRegion reg;
  reg.vertex = vertex;
  reg.alpha = alpha;
  reg.radii = radii;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> angle(0.0, 0.5 * kPi);
  for (double r : radii) {
    std::vector<CVector> pts;
    for (int i = 0; i < draws; ++i) {
      RVector x(n), y(n);
      for (int j = 0; j < n; ++j) x(j) = -std::abs(normal(rng));
      for (int j = 0; j < n; ++j) y(j) = normal(rng);
      const double b = angle(rng);
      const double beta = i % 4 == 0 ? 0.0 : b;
      if (std::cos(beta) * alpha < 1.0 - 1e-15) continue;
      CVector dir(n);
      for (int j = 0; j < n; ++j) dir(j) = cd(std::cos(beta) * x(j) / x.norm(), std::sin(beta) * y(j) / y.norm());
      CVector p;
      try {
        p = chart.inverse(wq + r * dir, vertex);
      } catch (const Error&) {
        continue;
      }
      if (wedge.in_wedge(p)) pts.push_back(p);
    }
    reg.samples.push_back(std::move(pts));
  }
  return reg;
}

bool ProbeReport::bounded_by(double C, double tol) const {
  return std::all_of(levels.begin(), levels.end(), [&](const ProbeLevel& l) { return l.covered == 0 || l.sup <= C + tol; });
}

ProbeReport nontangential_limit_probe(const RealFunction& u, const NonTangentialRegion& region,
                                      const DiscFamily& family) {
  ProbeReport rep;
  const int M = family.profile().grid()->radial_count();
  const int upper = family.profile().grid()->upper_arc_count();
  for (std::size_t i = 0; i < region.radii.size(); ++i) {
    ProbeLevel lvl;
    lvl.radius = region.radii[i];
    lvl.sup = kNegInf;
    for (const auto& p : region.samples[i]) {
      const Location loc = evaluation_map(family, p);
      if (!loc.covered) {
        ++lvl.uncovered;
        continue;
      }
      DiscSolution s;
      try {
        s = disc_at(family, loc.params);
      } catch (const Error&) {
        ++lvl.uncovered;
        continue;
      }
      double clearance = std::numeric_limits<double>::infinity();
      for (int k = 0; k < upper; ++k) clearance = std::min(clearance, (value_at(s.z, M, k) - region.vertex).norm());
      if (clearance <= 1e-8) {
        ++lvl.touching;
        continue;
      }
      ++lvl.covered;
      lvl.sup = std::max(lvl.sup, u(p));
    }
    rep.levels.push_back(lvl);
  }
  return rep;
}

}  // namespace jdisc
