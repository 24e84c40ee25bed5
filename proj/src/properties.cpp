#include "jdisc/properties.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "finite_difference.hpp"

namespace jdisc {

bool PropertyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

const PropertyCheck* PropertyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> solved_members(const DiscFamily& f) {
  std::vector<int> out;
  for (std::size_t i = 0; i < f.members().size(); ++i)
    if (f.members()[i].solved) out.push_back(static_cast<int>(i));
  return out;
}

// Interior samples of a disc on rings with radius <= 0.9.
std::vector<CVector> interior_samples(const DiscMap& z, int ring_stride = 8, int angle_stride = 16) {
  const auto& grid = z.front().grid();
  std::vector<CVector> out;
  for (int r = ring_stride / 2; r < grid->radial_count() && grid->ring_radius(r) <= 0.9; r += ring_stride)
    for (int k = 0; k < grid->boundary_count(); k += angle_stride) out.push_back(value_at(z, r, k));
  return out;
}

std::vector<CVector> upper_arc(const DiscMap& z) {
  const auto& grid = z.front().grid();
  std::vector<CVector> out;
  for (int k = 0; k < grid->upper_arc_count(); ++k) out.push_back(value_at(z, grid->radial_count(), k));
  return out;
}

double segment_distance(const CVector& p, const CVector& a, const CVector& b) {
  const RVector pa = to_real(p - a), ba = to_real(b - a);
  const double len = ba.squaredNorm();
  const double s = len > 0.0 ? std::clamp(pa.dot(ba) / len, 0.0, 1.0) : 0.0;
  return (pa - s * ba).norm();
}

double polyline_distance(const CVector& p, const std::vector<CVector>& line) {
  double d = kInf;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) d = std::min(d, segment_distance(p, line[i], line[i + 1]));
  return d;
}

double polyline_separation(const std::vector<CVector>& a, const std::vector<CVector>& b) {
  double d = kInf;
  for (const auto& p : a) d = std::min(d, polyline_distance(p, b));
  for (const auto& p : b) d = std::min(d, polyline_distance(p, a));
  return d;
}

// max_j of rho_j - delta sum_{k != j} rho_k at a model-coordinate point; negative inside W_delta.
double delta_wedge_value(const WedgeModel& wedge, const CVector& model_point, double delta) {
  const CVector z = wedge.model_chart().inverse(model_point);
  const RVector r = wedge.rho(z);
  const double sum = r.sum();
  double worst = -kInf;
  for (Eigen::Index j = 0; j < r.size(); ++j) worst = std::max(worst, r(j) - delta * (sum - r(j)));
  return worst;
}

std::string format(const char* label, double v) {
  std::ostringstream os;
  os.precision(6);
  os << label << v;
  return os.str();
}

PropertyCheck check_attachment(const DiscFamily& f) {
  double worst = 0.0;
  for (int i : solved_members(f)) worst = std::max(worst, f.members()[i].solution.attachment_error);
  const double tol = f.options().tol_bd;
  return {"attachment", worst <= tol, tol - worst, format("max |Re z| on upper arcs = ", worst)};
}

PropertyCheck check_containment(const DiscFamily& f) {
  int violations = 0;
  double margin = kInf;
  for (int i : solved_members(f)) {
    const auto& s = f.members()[i].solution;
    violations += s.wedge_violations;
    const auto& grid = s.z.front().grid();
    for (int r = 0; r < grid->radial_count(); ++r)
      for (int k = 0; k < grid->boundary_count(); ++k) {
        double mx = -kInf;
        for (const auto& c : s.z) mx = std::max(mx, c(r, k).real());
        margin = std::min(margin, -mx);
      }
  }
  return {"containment", violations == 0 && margin > 0.0, margin,
          format("nodes outside the closed wedge: ", violations)};
}

PropertyCheck check_foliation(const DiscFamily& f, const PropertyOptions& opts) {
  // Adjacent arcs at fixed t are disjoint.
  double sep = kInf;
  for (int i : solved_members(f)) {
    const auto& mi = f.members()[i];
    for (std::size_t j = 0; j < mi.c_index.size(); ++j) {
      auto ci = mi.c_index;
      ++ci[j];
      const int k = f.find(ci, mi.t_index);
      if (k < 0 || !f.members()[k].solved) continue;
      sep = std::min(sep, polyline_separation(upper_arc(mi.solution.z), upper_arc(f.members()[k].solution.z)));
    }
  }
  // A patch of E inside the swept region is hit by the arcs for every t on the grid.
  const auto& cv = f.parameter_grid().c_values;
  const int n = f.dimension();
  const double c_lo = cv.front() + 0.2 * (cv.back() - cv.front()), c_hi = cv.back() - 0.2 * (cv.back() - cv.front());
  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> uc(c_lo, c_hi), uth(0.25 * kPi, 0.75 * kPi);
  int hit = 0, total = 0;
  for (double t : f.parameter_grid().t_values) {
    RVector tv = RVector::Constant(n - 1, t);
    for (int s = 0; s < opts.edge_samples; ++s) {
      DiscParameters p{RVector(n - 1), tv, 0.0};
      for (int j = 0; j < n - 1; ++j) p.c(j) = cv.size() > 1 ? uc(rng) : cv.front();
      CVector q = model_image(f.profile(), p, std::polar(1.0, uth(rng)));
      q = q.imag().cast<cd>() * kI;
      ++total;
      hit += locate_on_edge(f, q, tv).covered;
    }
  }
  const double frac = total ? static_cast<double>(hit) / total : 0.0;
  std::ostringstream os;
  os << "arc separation " << sep << ", edge patch hit " << hit << "/" << total;
  const double margin = hit == total ? sep : frac - 1.0;
  return {"foliation", sep > 0.0 && hit == total, margin, os.str()};
}

PropertyCheck check_coverage(const DiscFamily& f, const WedgeModel& wedge, const PropertyOptions& opts) {
  const auto& cv = f.parameter_grid().c_values;
  const auto& tv = f.parameter_grid().t_values;
  const int n = f.dimension();
  std::mt19937 rng(opts.seed + 1);
  const double cw = cv.back() - cv.front(), tw = tv.back() - tv.front();
  std::uniform_real_distribution<double> uc(cv.front() + 0.2 * cw, cv.back() - 0.2 * cw);
  std::uniform_real_distribution<double> ut(tv.front() + 0.2 * tw, tv.back() - 0.2 * tw);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int covered = 0, total = 0;
  for (int s = 0; s < opts.coverage_samples; ++s) {
    DiscParameters p{RVector(n - 1), RVector(n - 1), 0.0};
    for (int j = 0; j < n - 1; ++j) {
      p.c(j) = cw > 0.0 ? uc(rng) : cv.front();
      p.t(j) = tw > 0.0 ? ut(rng) : tv.front();
    }
    const cd zeta = std::polar(0.85 * std::sqrt(u01(rng)), 2.0 * kPi * u01(rng));
    const CVector point = model_image(f.profile(), p, zeta);
    if (!(delta_wedge_value(wedge, point, opts.delta) < 0.0)) continue;
    ++total;
    covered += evaluation_map(f, point).covered;
  }
  const double frac = total ? static_cast<double>(covered) / total : 0.0;
  std::ostringstream os;
  os << "covered " << covered << "/" << total << " sample points of W_delta";
  return {"coverage", total > 0 && frac >= opts.coverage_threshold, frac - opts.coverage_threshold, os.str()};
}

PropertyCheck check_sheets(const DiscFamily& f, const WedgeModel& wedge, const PropertyOptions& opts) {
  const auto ids = solved_members(f);
  std::vector<std::vector<CVector>> samples;
  int outside = 0;
  for (int i : ids) {
    samples.push_back(interior_samples(f.members()[i].solution.z));
    for (const auto& p : samples.back()) outside += !(delta_wedge_value(wedge, p, opts.delta) < 0.0);
  }
  double sep = kInf;
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      if (f.members()[ids[a]].t_index == f.members()[ids[b]].t_index) continue;
      for (const auto& p : samples[a])
        for (const auto& q : samples[b]) sep = std::min(sep, (p - q).norm());
    }
  std::ostringstream os;
  os << "min distance between sheets " << sep << ", samples outside W_delta " << outside;
  return {"sheets", sep > 0.0 && outside == 0, sep, os.str()};
}

PropertyCheck check_fill(const DiscFamily& f, const PropertyOptions& opts) {
  const int n = f.dimension();
  RVector lo = opts.k_low, hi = opts.k_high;
  if (lo.size() == 0) {
    lo = RVector::Constant(n, -1.0);
    lo(0) = 0.0;
  }
  if (hi.size() == 0) hi = RVector::Constant(n, 1.0);
  if (lo.size() != n || hi.size() != n) throw InvalidArgument("K box must have n coordinates");
  std::size_t in_k = 0, all = 0;
  int k_discs = 0;
  for (int i : solved_members(f)) {
    const auto& z = f.members()[i].solution.z;
    int hits = 0;
    for (const auto& q : upper_arc(z)) {
      const RVector y = q.imag();
      hits += (y.array() >= lo.array()).all() && (y.array() <= hi.array()).all();
    }
    const auto s = interior_samples(z);
    all += s.size();
    if (hits >= opts.k_min_nodes) {
      ++k_discs;
      in_k += s.size();
    }
  }
  const double frac = all ? static_cast<double>(in_k) / all : 0.0;
  std::ostringstream os;
  os << k_discs << " discs meet K in >= " << opts.k_min_nodes << " nodes; covered fraction " << frac;
  return {"fill", frac > 0.0, frac, os.str()};
}

PropertyCheck check_transversality(const DiscFamily& f, const PropertyOptions& opts) {
  const int n = f.dimension();
  ScalarField r = opts.hypersurface;
  if (!r) r = [](const CVector& z) {
      double v = z(0).real();
      for (Eigen::Index j = 1; j < z.size(); ++j) v += 0.1 * z(j).real();
      return v;
    };
  double min_angle = kInf, max_level = 0.0;
  for (int i : solved_members(f)) {
    const auto& z = f.members()[i].solution.z;
    const auto& grid = z.front().grid();
    const int b = grid->radial_count();
    DiscMap dz, dzb;
    for (const auto& c : z) {
      dz.push_back(c.d_zeta());
      dzb.push_back(c.d_zetabar());
    }
    for (int k = 0; k < grid->upper_arc_count(); ++k) {
      const cd e = grid->boundary_node(k);
      const CVector p = value_at(z, b, k);
      CVector zr(n);
      for (int j = 0; j < n; ++j) zr(j) = e * dz[j](b, k) + std::conj(e) * dzb[j](b, k);
      RVector grad(2 * n);
      for (int c = 0; c < 2 * n; ++c) {
        const cd dir = c % 2 == 0 ? cd(1.0) : kI;
        grad(c) = detail::central_difference(
            [&](double s) {
              CVector q = p;
              q(c / 2) += s * dir;
              return r(q);
            },
            1e-4);
      }
      max_level = std::max(max_level, std::abs(r(p)));
      const RVector v = to_real(zr);
      const double s = std::abs(grad.dot(v)) / (grad.norm() * v.norm());
      min_angle = std::min(min_angle, std::asin(std::min(1.0, s)));
    }
  }
  std::ostringstream os;
  os << "min angle between disc and hypersurface " << min_angle << " rad; max |r| on arcs " << max_level;
  return {"transversality", min_angle > 0.0, min_angle, os.str()};
}

double arc_distance_to(const DiscMap& z, const CVector& p) { return polyline_distance(p, upper_arc(z)); }

PropertyCheck check_density(const DiscFamily& f, const PropertyOptions& opts) {
  const int n = f.dimension();
  const CVector p = opts.marked_point.size() ? opts.marked_point : CVector::Zero(n);
  const auto ids = solved_members(f);
  std::vector<char> avoids(f.members().size(), 0);
  const double touch = 1e-9;
  int count = 0;
  for (int i : ids) {
    avoids[i] = arc_distance_to(f.members()[i].solution.z, p) > touch;
    count += avoids[i];
  }
  int orphans = 0;
  for (int i : ids) {
    if (avoids[i]) continue;
    bool ok = false;
    for (int k : f.neighbours(i)) ok = ok || avoids[k];
    orphans += !ok;
  }
  const double frac = ids.empty() ? 0.0 : static_cast<double>(count) / ids.size();
  std::ostringstream os;
  os << count << "/" << ids.size() << " discs avoid the marked point; " << orphans
     << " touching discs without an avoiding neighbour";
  return {"density", count > 0 && orphans == 0, frac, os.str()};
}

PropertyCheck check_compactness(const DiscFamily& f, const WedgeModel& wedge, const PropertyOptions& opts) {
  const int n = f.dimension();
  const CVector p = opts.marked_point.size() ? opts.marked_point : CVector::Zero(n);
  double margin = kInf, radius = 0.0;
  for (int i : solved_members(f)) {
    const auto& z = f.members()[i].solution.z;
    if (!(arc_distance_to(z, p) > 1e-9)) continue;
    const auto& grid = z.front().grid();
    for (int k = grid->upper_arc_count(); k < grid->boundary_count(); ++k) {
      const CVector q = value_at(z, grid->radial_count(), k);
      margin = std::min(margin, -delta_wedge_value(wedge, q, opts.delta));
      radius = std::max(radius, q.norm());
    }
  }
  std::ostringstream os;
  os << "lower arcs: min depth inside W_delta " << margin << ", max |z| " << radius;
  return {"compactness", margin > 0.0 && std::isfinite(radius), margin, os.str()};
}

PropertyCheck check_injectivity(const DiscFamily& f) {
  struct Triple {
    RVector key;
    CVector image;
  };
  std::vector<Triple> triples;
  for (int i : solved_members(f)) {
    const auto& m = f.members()[i];
    const auto& z = m.solution.z;
    const auto& grid = z.front().grid();
    for (int r = 4; r < grid->radial_count() && grid->ring_radius(r) <= 0.9; r += 8)
      for (int k = 0; k < grid->boundary_count(); k += 16) {
        const cd zeta = grid->node(r, k);
        RVector key(2 * m.params.c.size() + 2);
        key << m.params.c, m.params.t, zeta.real(), zeta.imag();
        triples.push_back({key, value_at(z, r, k)});
      }
  }
  double ratio = kInf;
  for (std::size_t a = 0; a < triples.size(); ++a)
    for (std::size_t b = a + 1; b < triples.size(); ++b) {
      const double dk = (triples[a].key - triples[b].key).norm();
      ratio = std::min(ratio, (triples[a].image - triples[b].image).norm() / dk);
    }
  return {"injectivity", ratio > 0.0, ratio, format("min |Ev(a) - Ev(b)| / |a - b| = ", ratio)};
}

}  // namespace

PropertyReport validate_properties(const DiscFamily& family, const WedgeModel& wedge, const PropertyOptions& opts) {
  if (wedge.dimension() != family.dimension()) throw InvalidArgument("wedge and family dimensions differ");
  if (!(opts.delta > wedge.tau())) throw InvalidArgument("delta must exceed the wedge's tau");
  auto want = [&](const char* name) { return opts.select.empty() || opts.select.count(name) > 0; };
  PropertyReport report;
  if (want("attachment")) report.checks.push_back(check_attachment(family));
  if (want("containment")) report.checks.push_back(check_containment(family));
  if (want("foliation")) report.checks.push_back(check_foliation(family, opts));
  if (want("coverage")) report.checks.push_back(check_coverage(family, wedge, opts));
  if (want("sheets")) report.checks.push_back(check_sheets(family, wedge, opts));
  if (want("fill")) report.checks.push_back(check_fill(family, opts));
  if (want("transversality")) report.checks.push_back(check_transversality(family, opts));
  if (want("density")) report.checks.push_back(check_density(family, opts));
  if (want("compactness")) report.checks.push_back(check_compactness(family, wedge, opts));
  if (want("injectivity")) report.checks.push_back(check_injectivity(family));
  return report;
}

}  // namespace jdisc
