// Acceptance criteria 1-11: one PASS/FAIL line each, runtime limits included.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "jdisc/levi_form.hpp"
#include "jdisc/properties.hpp"
#include "jdisc/psh.hpp"
#include "oracles.hpp"

using namespace jdisc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string format(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

DiscParameters params(double c, double t, double lambda = 0.0) {
  return {RVector::Constant(1, c), RVector::Constant(1, t), lambda};
}

const std::vector<double> kC = {-0.5, -0.25, 0.0, 0.25, 0.5};
const std::vector<double> kT = {0.5, 0.75, 1.0, 1.5, 2.0};

ComplexMatrixField zbar2_e12() {
  std::vector<std::vector<Polynomial>> e(2, std::vector<Polynomial>(2, Polynomial(2)));
  e[0][1] = Polynomial(2, {Monomial{1.0, {0, 0}, {0, 1}}});
  return ComplexMatrixField::polynomial(2, e, 10.0);
}

// ---------------------------------------------------------------- 1, 3

using Density = std::function<cd(cd)>;

// Ten seeded random polynomials in w and wbar of bidegree <= (2, 2).
std::vector<Density> density_suite() {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Density> suite;
  for (int i = 0; i < 10; ++i) {
    std::vector<cd> c(9);
    for (auto& x : c) x = cd(u(rng), u(rng));
    suite.push_back([c](cd w) {
      const cd wb = std::conj(w);
      cd v = 0.0;
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) v += c[3 * p + q] * std::pow(w, p) * std::pow(wb, q);
      return v;
    });
  }
  return suite;
}

// Relative L2 error of the forward-difference dbar of Tg against g, h = 2 pi / N.
double dbar_error(const Density& g, int n, int m) {
  auto grid = DiscGrid::create(n, m);
  const DiscInterpolant tg(cauchy_green(DiscFunction::from_function(grid, g)));
  double num = 0.0, den = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.7})
    for (int j = 0; j < 32; ++j) {
      const cd z = std::polar(r, 2.0 * oracle::pi * j / 32);
      const cd d = oracle::dbar_forward([&](cd p) { return tg(p); }, z, grid->spacing());
      num += r * std::norm(d - g(z));
      den += r * std::norm(g(z));
    }
  return std::sqrt(num / den);
}

Outcome criterion1() {
  double worst = 0.0, lo = 1e300, hi = 0.0;
  for (const auto& g : density_suite()) {
    const double coarse = dbar_error(g, 256, 64), fine = dbar_error(g, 512, 128);
    worst = std::max(worst, coarse);
    lo = std::min(lo, fine / coarse);
    hi = std::max(hi, fine / coarse);
  }
  const bool pass = worst <= 0.02 && lo >= 0.35 && hi <= 0.65;
  return {pass, format("max rel L2 %.4g (<= 0.02), refinement ratio in [%.3f, %.3f] (0.5 +- 30%%)", worst, lo, hi)};
}

Outcome criterion2() {
  auto grid = DiscGrid::create(256, 64);
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  double err = 0.0, oracle_err = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const int deg = 8 * trial;
    std::vector<double> a(deg + 1), b(deg + 1);
    for (int k = 0; k <= deg; ++k) {
      a[k] = nd(rng);
      b[k] = k ? nd(rng) : 0.0;
    }
    auto phi = BoundaryFunction::from_function(grid, [&](double t) {
      double v = a[0];
      for (int k = 1; k <= deg; ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
      return v;
    });
    const auto s = schwarz_transform(phi);
    const auto k = cauchy_transform(phi);
    const cd p0 = average(phi);
    for (int r = 0; r < grid->ring_count(); ++r)
      for (int j = 0; j < grid->boundary_count(); ++j) {
        err = std::max(err, std::abs(s(r, j) - (2.0 * k(r, j) - p0)));
        // Closed form: S phi = a0 + sum (a_k - i b_k) zeta^k.
        cd ref = a[0];
        const cd z = grid->node(r, j);
        cd zk = 1.0;
        for (int m = 1; m <= deg; ++m) {
          zk *= z;
          ref += cd(a[m], -b[m]) * zk;
        }
        oracle_err = std::max(oracle_err, std::abs(s(r, j) - ref));
      }
  }
  return {err <= 1e-10 && oracle_err <= 1e-10,
          format("max |S - (2K - P0)| %.3g, max |S - closed form| %.3g (<= 1e-10)", err, oracle_err)};
}

Outcome criterion3() {
  auto grid = DiscGrid::create(256, 64);
  double oracle_err = 0.0;
  for (const auto& g : density_suite()) oracle_err = std::max(oracle_err, dbar_error(g, 256, 64));
  const std::vector<Density> fs = {
      [](cd z) { return z * z; },
      [](cd z) { return std::conj(z); },
      [](cd z) { return std::exp(z) * (1.0 + 0.1 * std::conj(z)); },
  };
  double worst = 0.0;
  for (const auto& f : fs) {
    auto df = DiscFunction::from_function(grid, f);
    worst = std::max(worst, (green_schwarz_reconstruct(df) - df).sup_norm());
  }
  return {worst <= 5.0 * oracle_err, format("sup error %.3g <= 5 x dbar-oracle error %.3g", worst, oracle_err)};
}

// ---------------------------------------------------------------- 4, 5

Outcome criterion4() {
  auto prof = EdgeProfile::standard(DiscGrid::create(256, 64));
  double res = 0.0, dist = 0.0;
  for (double c : kC)
    for (double t : kT) {
      const auto p = params(c, t, 0.05);
      const auto s = solve_disc(p, ComplexMatrixField::zero(2), prof);
      res = std::max(res, sup_distance(bishop_rhs(s.z, p, ComplexMatrixField::zero(2), prof), s.z));
      // The model solution built from the boundary data directly.
      DiscMap bp1 = {prof.schwarz(), cd(t) * prof.schwarz()};
      bp1[1] += cd(0.0, c);
      dist = std::max(dist, sup_distance(s.z, bp1));
    }
  return {res <= 1e-12 && dist <= 1e-12, format("max residual %.3g, max distance to the model %.3g (<= 1e-12)", res, dist)};
}

Outcome criterion5() {
  auto prof = EdgeProfile::standard(DiscGrid::create(256, 64));
  const auto fam = solve_family({kC, kT}, 2, zbar2_e12(), prof, 0.05);
  double res = 0.0, cr = 0.0, att = 0.0;
  int viol = 0, failed = 0;
  for (const auto& m : fam.members()) {
    if (!m.solved) {
      ++failed;
      continue;
    }
    res = std::max(res, m.solution.residual);
    cr = std::max(cr, m.solution.cr_residual);
    att = std::max(att, m.solution.attachment_error);
    viol += m.solution.wedge_violations;
  }
  const bool pass = failed == 0 && res <= 1e-9 && cr <= 1e-7 && att <= 1e-8 && viol == 0;
  return {pass, format("failed %d, residual %.3g, CR %.3g, attachment %.3g, violations %d", failed, res, cr, att, viol)};
}

// ---------------------------------------------------------------- 6, 7

ComplexMatrixField random_field(std::mt19937& rng, double size) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pw(0, 2);
  std::vector<std::vector<Polynomial>> e(2, std::vector<Polynomial>(2, Polynomial(2)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      for (int t = 0; t < 4; ++t) {
        std::vector<int> a = {pw(rng), pw(rng)}, b = {pw(rng), pw(rng)};
        const int deg = a[0] + a[1] + b[0] + b[1];
        if (deg == 0 || deg > 3) continue;
        e[i][j].add(Monomial{size * cd(u(rng), u(rng)), a, b});
      }
      e[i][j].add(Monomial{size * cd(u(rng), u(rng)), {i == 0, i == 1}, {0, 0}});
      e[i][j].add(Monomial{size * cd(u(rng), u(rng)), {0, 0}, {j == 0, j == 1}});
    }
  return ComplexMatrixField::polynomial(2, e, 0.5);
}

Outcome criterion6() {
  std::mt19937 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto A = random_field(rng, 0.3);
    const auto norm = normalize_structure(A);
    const auto f = [&](const CVector& z) { return norm.field(z); };
    for (int l = 0; l < 2; ++l)
      worst = std::max(worst, oracle::matrix_d_z(f, CVector::Zero(2), l, 1e-3).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-6, format("max finite-difference |A'_z(0)| %.3g (<= 1e-6)", worst)};
}

Outcome criterion7() {
  std::mt19937 rng(77);
  std::normal_distribution<double> nd;
  const auto norm = normalize_structure(random_field(rng, 0.3));
  ScalarField u = [](const CVector& z) { return z.squaredNorm(); };
  double worst = 1e300;
  int count = 0;
  for (int i = 0; i < 10; ++i) {
    CVector p(2);
    for (int j = 0; j < 2; ++j) p(j) = 0.02 * cd(nd(rng), nd(rng));
    for (int d = 0; d < 10; ++d) {
      CVector V(2);
      for (int j = 0; j < 2; ++j) V(j) = cd(nd(rng), nd(rng));
      V.normalize();
      worst = std::min(worst, levi_form(u, norm.field, p, V));
      ++count;
    }
  }
  return {worst > 0.0, format("min Levi form %.6g over %d (point, direction) pairs (> 0)", worst, count)};
}

// ---------------------------------------------------------------- 8, 9, 10

Outcome criterion8() {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  std::vector<CVector> centers;
  for (int i = 0; i < 20; ++i) {
    CVector c(2);
    for (int j = 0; j < 2; ++j) c(j) = 0.3 * cd(nd(rng), nd(rng));
    centers.push_back(c);
  }
  std::vector<CVector> dirs;
  for (int d = 0; d < 4; ++d) {
    CVector w(2);
    for (int j = 0; j < 2; ++j) w(j) = cd(nd(rng), nd(rng));
    dirs.push_back(w.normalized());
  }
  const std::vector<double> radii = {0.05, 0.2, 0.5};

  // Monotone decrease, exactly, for inputs that are not plurisubharmonic.
  bool monotone = true;
  double decrease = 0.0;
  auto check_monotone = [&](const EnvelopeState& s) {
    for (int m = 1; m < static_cast<int>(s.values.size()); ++m) {
      monotone = monotone && (s.values[m].array() <= s.values[m - 1].array()).all();
      decrease = std::max(decrease, (s.values[m - 1] - s.values[m]).maxCoeff());
    }
  };
  RealFunction bump([](const CVector& z) { return z.norm() < 0.3 ? 0.0 : 1.0; }, Regularity::upper_semicontinuous);
  RealFunction neg = [](const CVector& z) { return -z.squaredNorm() + std::sin(3.0 * z(0).real()); };
  check_monotone(disc_envelope_iterate(linear_disc_pool(centers, dirs, radii, 32, bump), 5));
  check_monotone(disc_envelope_iterate(linear_disc_pool(centers, dirs, radii, 32, neg), 5));
  auto prof = EdgeProfile::standard(DiscGrid::create(128, 32));
  const auto fam = solve_family({kC, kT}, 2, zbar2_e12(), prof, 0.05);
  check_monotone(disc_envelope_iterate(family_disc_pool(fam, neg), 5));

  // Fixation of plurisubharmonic inputs under A = 0 with linear discs.
  double worst_ratio = 0.0, worst_change = 0.0;
  bool fixed = true;
  const std::vector<RealFunction> psh = {
      [](const CVector& z) { return z.squaredNorm(); },
      [](const CVector& z) { return std::log1p(z.squaredNorm()); },
      [](const CVector& z) { return std::max(z.squaredNorm(), z(0).real()); },
  };
  for (const auto& v : psh) {
    const auto s = disc_envelope_iterate(linear_disc_pool(centers, dirs, radii, 32, v), 1);
    const double change = (s.values[1] - s.values[0]).cwiseAbs().maxCoeff();
    worst_change = std::max(worst_change, change);
    fixed = fixed && change <= 5.0 * s.grid_error;
    if (s.grid_error > 0.0) worst_ratio = std::max(worst_ratio, change / s.grid_error);
  }
  return {monotone && decrease > 0.0 && fixed,
          format("monotone over 5 iterations: %s (max decrease %.3g); psh fixation max |v1 - v0| %.3g, "
                 "<= 5 x grid error: %s",
                 monotone ? "yes" : "no", decrease, worst_change, fixed ? "yes" : "no")};
}

Outcome criterion9() {
  const double anchor = std::abs(harmonic_measure(0.0, Arc::upper()) - 0.5);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ur(0.0, 0.95), ut(0.0, 2.0 * oracle::pi);
  double add = 0.0, mono = 0.0, poisson = 0.0;
  for (int i = 0; i < 500; ++i) {
    const cd p = std::polar(ur(rng), ut(rng));
    double a = ut(rng), b = ut(rng);
    if (a > b) std::swap(a, b);
    const double m = a + (b - a) * 0.37;
    const Arc arc{a, b}, rest{b, a + 2.0 * oracle::pi};
    add = std::max(add, std::abs(harmonic_measure(p, arc) + harmonic_measure(p, rest) - 1.0));
    add = std::max(add, std::abs(harmonic_measure(p, Arc{a, m}) + harmonic_measure(p, Arc{m, b}) -
                                 harmonic_measure(p, arc)));
    const Arc inner{a + 0.25 * (b - a), b - 0.25 * (b - a)};
    mono = std::max(mono, harmonic_measure(p, inner) - harmonic_measure(p, arc));
    if (i % 25 == 0) poisson = std::max(poisson, std::abs(harmonic_measure(p, arc) - oracle::poisson_arc(p, a, b)));
  }
  const bool pass = anchor <= 1e-12 && add <= 1e-10 && mono <= 1e-10 && poisson <= 1e-10;
  return {pass, format("|w(0) - 1/2| %.3g; additivity %.3g; monotonicity excess %.3g; Poisson oracle %.3g", anchor,
                       add, mono, poisson)};
}

Outcome criterion10() {
  auto grid = DiscGrid::create(128, 32);
  auto prof = EdgeProfile::standard(grid);
  const auto fam = solve_family({kC, kT}, 2, ComplexMatrixField::zero(2), prof, 0.0);
  const auto p0 = params(0.0, 1.0);
  const auto disc = model_disc(p0, prof);
  const int M = grid->radial_count();
  EdgeSet K;
  for (int k = 0; k < grid->upper_arc_count(); ++k) K.points.push_back(value_at(disc.z, M, k));
  const double C = 2.0, c = -1.0;
  RealFunction u = [&](const CVector& z) {
    if (z(0).real() > -1e-13) return c;
    const auto inv = model_inverse(prof, z);
    const double w = oracle::poisson_arc(inv->second, 0.0, oracle::pi);
    return c * w + C * (1.0 - w);
  };
  std::vector<CVector> probes;
  for (int i = 0; i < 10; ++i) probes.push_back(model_image(prof, p0, std::polar(0.085 * (i + 1), 0.9 * i)));
  const auto rep = two_constants_check(u, K, fam, C, c, probes);
  double tight = 0.0;
  for (double s : rep.slack) tight = std::max(tight, std::abs(s));
  const bool pass = rep.covered == 10 && rep.max_violation <= 2.0 * rep.grid_error && tight <= 2.0 * rep.grid_error;
  return {pass, format("covered %d/10, max violation %.3g, max |slack| %.3g (<= 2 x grid error %.3g)", rep.covered,
                       rep.max_violation, tight, rep.grid_error)};
}

// ---------------------------------------------------------------- 11

Outcome criterion11() {
  auto prof = EdgeProfile::standard(DiscGrid::create(256, 64));
  const auto wedge = WedgeModel::standard(2);
  const auto model = solve_family({kC, kT}, 2, ComplexMatrixField::zero(2), prof, 0.0);
  const auto mrep = validate_properties(model, wedge);
  bool model_ok = mrep.checks.size() == 10;
  double model_margin = 1e300;
  for (const auto& c : mrep.checks) {
    model_ok = model_ok && c.passed && c.margin > 0.0;
    model_margin = std::min(model_margin, c.margin);
  }

  const auto fam = solve_family({kC, kT}, 2, zbar2_e12(), prof, 0.05);
  PropertyOptions o;
  o.select = {"attachment", "foliation", "coverage", "sheets", "transversality"};
  const auto prep = validate_properties(fam, wedge, o);
  const auto* att = prep.find("attachment");
  const auto* fol = prep.find("foliation");
  const auto* cov = prep.find("coverage");
  const auto* sh = prep.find("sheets");
  const auto* tr = prep.find("transversality");
  const bool pert_ok = att->passed && fol->passed && cov->passed && sh->passed && sh->margin > 0.0 && tr->passed &&
                       tr->margin > 0.0;
  return {model_ok && pert_ok,
          format("model: all %zu checks %s, min margin %.3g; perturbed: attachment %s, foliation %s, coverage %s "
                 "(%s), sheets margin %.3g, transversality angle %.3g",
                 mrep.checks.size(), model_ok ? "pass" : "FAIL", model_margin, att->passed ? "pass" : "FAIL",
                 fol->passed ? "pass" : "FAIL", cov->passed ? "pass" : "FAIL", cov->detail.c_str(), sh->margin,
                 tr->margin)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    Outcome (*run)();
  };
  const Criterion all[] = {
      {1, "dbar oracle", 30.0, criterion1},
      {2, "S = 2K - P0", 1.0, criterion2},
      {3, "green-schwarz reconstruction", 10.0, criterion3},
      {4, "lambda = 0 regression", 5.0, criterion4},
      {5, "perturbed solve", 120.0, criterion5},
      {6, "normalization", 5.0, criterion6},
      {7, "levi form positivity", 60.0, criterion7},
      {8, "envelope monotonicity and fixation", 120.0, criterion8},
      {9, "harmonic measure anchor", 1.0, criterion9},
      {10, "two-constants tightness", 10.0, criterion10},
      {11, "property suite", 180.0, criterion11},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.pass && secs <= c.limit;
    failures += !pass;
    std::printf("%s %2d %s: %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                secs, c.limit);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
