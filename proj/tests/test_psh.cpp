#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "jdisc/psh.hpp"
#include "oracles.hpp"

using namespace jdisc;

namespace {

DiscParameters params(double c, double t) { return {RVector::Constant(1, c), RVector::Constant(1, t), 0.0}; }

CVector pt(cd a, cd b) { return (CVector(2) << a, b).finished(); }

GridPtr small_grid() {
  static GridPtr g = DiscGrid::create(128, 32);
  return g;
}

const DiscFamily& model_family() {
  static DiscFamily fam = solve_family({{-0.5, -0.25, 0.0, 0.25, 0.5}, {0.5, 0.75, 1.0, 1.5, 2.0}}, 2,
                                       ComplexMatrixField::zero(2), EdgeProfile::standard(small_grid()), 0.0);
  return fam;
}

const RealFunction norm2 = [](const CVector& z) { return z.squaredNorm(); };

}  // namespace

TEST_CASE("real functions") {
  RealFunction ok = [](const CVector&) { return -std::numeric_limits<double>::infinity(); };
  RealFunction bad = [](const CVector&) { return std::nan(""); };
  RealFunction top = [](const CVector&) { return std::numeric_limits<double>::infinity(); };
  const CVector z = pt(0.0, 0.0);
  CHECK(ok(z) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(bad(z), InvalidArgument);
  CHECK_THROWS_AS(top.sampled_sup({z}), InvalidArgument);
  CHECK(norm2.sampled_sup({pt(1.0, 0.0), pt(0.0, cd(0.0, 2.0))}) == 4.0);
}

TEST_CASE("sub-mean-value test along discs") {
  auto grid = DiscGrid::create(256, 64);
  auto prof = EdgeProfile::standard(grid);
  const auto disc = model_disc(params(0.2, 1.3), prof);

  SUBCASE("harmonic") {
    auto rep = subharmonic_along_disc([](const CVector& z) { return z(0).real(); }, disc.z);
    CHECK(std::abs(rep.margin) < 1e-9);
    CHECK(rep.passed);
  }
  SUBCASE("squared norm") {
    auto rep = subharmonic_along_disc(norm2, disc.z);
    CHECK(rep.margin >= 0.0);
    CHECK(rep.passed);
  }
  SUBCASE("logarithm of the distance to an outside point against dense sampling") {
    const CVector p0 = pt(cd(0.3, 0.2), cd(0.1, -0.4));
    RealFunction u = [&](const CVector& z) { return std::log((z - p0).norm()); };
    SubharmonicOptions o;
    auto rep = subharmonic_along_disc(u, disc.z, o);
    CHECK(rep.passed);
    CHECK(rep.margin >= -rep.grid_error);
    // Oracle: same centres and radii, exact disc through the Schwarz integral, 1024-node means.
    double best = 1e300;
    for (int r = o.ring_stride - 1; r < grid->radial_count(); r += o.ring_stride) {
      const double r0 = grid->ring_radius(r);
      if (r0 > o.max_center_radius) break;
      for (int k = 0; k < grid->boundary_count(); k += o.angle_stride) {
        const cd c = grid->node(r, k);
        const double center = u(model_image(prof, disc.params, c));
        for (int i = 1; i <= o.circles; ++i) {
          const double rho = 0.9 * (1.0 - r0) * i / o.circles;
          const cd m = oracle::circle_mean(
              [&](double th) { return cd(u(model_image(prof, disc.params, c + std::polar(rho, th)))); }, 1024);
          best = std::min(best, m.real() - center);
        }
      }
    }
    CHECK(std::abs(rep.margin - best) < 1e-8);
    // The reciprocal is superharmonic and must be flagged.
    auto neg = subharmonic_along_disc([&](const CVector& z) { return -std::log((z - p0).norm()); }, disc.z);
    CHECK_FALSE(neg.passed);
  }
}

TEST_CASE("disc envelope") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::vector<CVector> centers;
  for (int i = 0; i < 10; ++i) centers.push_back(pt(cd(nd(rng), nd(rng)) * 0.3, cd(nd(rng), nd(rng)) * 0.3));
  const std::vector<CVector> dirs = {pt(1.0, 0.0), pt(0.0, 1.0), pt(std::sqrt(0.5), cd(0.0, std::sqrt(0.5)))};
  const std::vector<double> radii = {0.1, 0.3, 0.6};

  SUBCASE("plurisubharmonic input is fixed") {
    auto s = disc_envelope_iterate(linear_disc_pool(centers, dirs, radii, 32, norm2), 5);
    CHECK(s.iterations() == 5);
    for (int m = 1; m <= 5; ++m)
      for (Eigen::Index i = 0; i < s.values[m].size(); ++i) CHECK(s.values[m](i) <= s.values[m - 1](i));
    CHECK((s.values[1] - s.values[0]).cwiseAbs().maxCoeff() <= 5.0 * s.grid_error);
  }
  SUBCASE("usc indicator decreases near the ball") {
    const double R = 0.5;
    RealFunction v([&](const CVector& z) { return z.norm() < R ? 0.0 : 1.0; }, Regularity::upper_semicontinuous);
    const CVector p = pt(0.55, 0.0);
    auto s = disc_envelope_iterate(linear_disc_pool({p}, {pt(1.0, 0.0)}, {0.3}, 64, v), 3);
    CHECK(s.values[0](0) == 1.0);
    // The disc p + 0.3 zeta crosses the ball on an arc of angle 2 acos(...) < 2 pi.
    const double inside = 2.0 * std::acos((0.55 * 0.55 + 0.09 - R * R) / (2 * 0.55 * 0.3)) / (2 * oracle::pi);
    CHECK(s.values[1](0) < 1.0);
    CHECK(std::abs(s.values[1](0) - (1.0 - inside)) < 2.0 / 64);
    for (int m = 1; m <= 3; ++m) CHECK((s.values[m].array() <= s.values[m - 1].array()).all());

    // A pool-subharmonic minorant stays below every iterate.
    RVector phi(s.sample_points.size());
    for (std::size_t i = 0; i < s.sample_points.size(); ++i) phi(i) = (s.sample_points[i].squaredNorm() - R * R) / 2.0;
    REQUIRE(is_pool_subharmonic_minorant(s, phi));
    for (const auto& vm : s.values) CHECK((phi.array() <= vm.array() + 1e-14).all());
  }
  SUBCASE("constant discs only") {
    EnvelopeState s;
    s.sample_points = centers;
    s.is_center.assign(centers.size(), 0);
    RVector v0(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) v0(i) = -centers[i].squaredNorm();
    s.values = {v0};
    s = disc_envelope_iterate(s, 5);
    for (const auto& vm : s.values) CHECK(vm == v0);
    CHECK(s.last_delta().isZero());
  }
  SUBCASE("pool validation") {
    auto s = linear_disc_pool(centers, dirs, radii, 16, norm2);
    s.is_center[s.sample_points.size() - 1] = 1;
    CHECK_THROWS_AS(disc_envelope_iterate(s, 1), InvalidArgument);
    auto t = linear_disc_pool(centers, dirs, radii, 16, norm2);
    t.pool[0].weights[0] += 0.1;
    CHECK_THROWS_AS(disc_envelope_iterate(t, 1), InvalidArgument);
  }
  SUBCASE("family pool") {
    const auto& fam = model_family();
    auto s = disc_envelope_iterate(family_disc_pool(fam, norm2), 5);
    for (int m = 1; m <= 5; ++m) CHECK((s.values[m].array() <= s.values[m - 1].array()).all());
    CHECK((s.values[1] - s.values[0]).cwiseAbs().maxCoeff() <= 5.0 * s.grid_error + 1e-14);
    // A plurisuperharmonic input strictly decreases.
    auto q = disc_envelope_iterate(family_disc_pool(fam, [](const CVector& z) { return -z.squaredNorm(); }), 2);
    CHECK((q.values[0] - q.values[1]).maxCoeff() > 1e-3);
  }
}

TEST_CASE("upper regularization") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  std::vector<CVector> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(pt(cd(ud(rng), ud(rng)), cd(ud(rng), ud(rng))));

  RealFunction f = [](const CVector& z) { return z(0).real() + std::sin(z(1).imag()); };
  RealFunction g = [](const CVector& z) { return -z(0).real(); };
  SUBCASE("continuous input is unchanged") {
    auto fs = upper_regularize(f, 0.01);
    for (const auto& p : pts) CHECK(fs(p) == f(p));
  }
  SUBCASE("maximum of two continuous functions") {
    const double scale = 1e-4;
    RealFunction h([&](const CVector& z) { return std::max(f(z), g(z)); }, Regularity::arbitrary);
    auto hs = upper_regularize(h, scale);
    // Lipschitz constant <= sqrt 2 on a cell of diameter 2 scale.
    for (const auto& p : pts) {
      CHECK(hs(p) >= h(p));
      CHECK(hs(p) - std::max(f(p), g(p)) <= 2.0 * std::sqrt(2.0) * scale);
    }
  }
  SUBCASE("characteristic function on a slice") {
    const double scale = 1e-3;
    RealFunction u([](const CVector& z) { return z(0).real() > 0.0 ? 1.0 : 0.0; }, Regularity::arbitrary);
    auto us = upper_regularize(u, scale);
    // Dense one-dimensional limsup: sup over [x - h, x + h] with h -> 0.
    auto limsup = [&](double x) {
      double s = 0.0;
      for (int i = -1000; i <= 1000; ++i) s = std::max(s, u(pt(x + 1e-9 * i / 1000, 0.0)));
      return s;
    };
    for (int i = -50; i <= 50; ++i) {
      const double x = 0.01 * i;
      CHECK(us(pt(x, 0.0)) == limsup(x));
    }
    CHECK(us(pt(0.0, 0.0)) == 1.0);
    // Idempotent at fixed scale and above the input.
    auto uss = upper_regularize(us, scale);
    for (const auto& p : pts) {
      CHECK(uss(p) == us(p));
      CHECK(us(p) >= u(p));
    }
  }
}

TEST_CASE("harmonic measure bounds") {
  const auto& fam = model_family();
  const auto& grid = small_grid();
  const int M = grid->radial_count();
  const DiscParameters p0 = params(0.0, 1.0);
  const auto disc = model_disc(p0, fam.profile());
  auto arc_set = [&](int k0, int k1) {
    EdgeSet K;
    for (int k = k0; k <= k1; ++k) K.points.push_back(value_at(disc.z, M, k));
    return K;
  };
  const EdgeSet full = arc_set(0, 64), quarter = arc_set(0, 32);

  for (cd zeta : {cd(0.0, 0.0), cd(0.0, 0.3), cd(-0.4, -0.2)}) {
    const CVector q = model_image(fam.profile(), p0, zeta);
    auto a = p_measure_upper_bound(full, fam, q);
    REQUIRE(a.covered);
    CHECK(std::abs(a.lower - oracle::poisson_arc(zeta, 0.0, oracle::pi)) < 1e-9);
    auto b = p_measure_upper_bound(quarter, fam, q);
    CHECK(std::abs(b.lower - oracle::poisson_arc(zeta, 0.0, 0.5 * oracle::pi)) < 1e-9);
    CHECK(b.lower <= a.lower);
    CHECK(a.upper == 1.0);
    CHECK(p_measure_upper_bound(EdgeSet{}, fam, q).lower == 0.0);
  }
  CHECK(std::abs(p_measure_upper_bound(full, fam, model_image(fam.profile(), p0, 0.0)).lower - 0.5) < 1e-9);
  CHECK(std::abs(p_measure_upper_bound(quarter, fam, model_image(fam.profile(), p0, 0.0)).lower - 0.25) < 1e-9);
  CHECK_FALSE(p_measure_upper_bound(full, fam, pt(0.1, -0.1)).covered);
}

TEST_CASE("two-constants inequality") {
  const auto& fam = model_family();
  const auto& grid = small_grid();
  const int M = grid->radial_count();
  const DiscParameters p0 = params(0.0, 1.0);
  const auto disc = model_disc(p0, fam.profile());
  EdgeSet K;
  for (int k = 0; k < grid->upper_arc_count(); ++k) K.points.push_back(value_at(disc.z, M, k));
  const double C = 3.0, c = -1.0;

  std::vector<CVector> probes;
  std::vector<cd> zetas;
  for (int i = 0; i < 10; ++i) {
    zetas.push_back(std::polar(0.08 * (i + 1), 0.7 * i));
    probes.push_back(model_image(fam.profile(), p0, zetas.back()));
  }

  SUBCASE("tight for two-valued boundary data") {
    // Harmonic extension of c on the upper arc and C on the lower arc, on this disc.
    RealFunction u = [&](const CVector& z) {
      if (z(0).real() > -1e-13) return c;
      auto inv = model_inverse(fam.profile(), z);
      const double w = oracle::poisson_arc(inv->second, 0.0, oracle::pi);
      return c * w + C * (1.0 - w);
    };
    auto rep = two_constants_check(u, K, fam, C, c, probes);
    CHECK(rep.covered == 10);
    CHECK(rep.violations == 0);
    CHECK(rep.max_violation <= 2.0 * rep.grid_error);
    for (double s : rep.slack) CHECK(std::abs(s) < 1e-9);
  }
  SUBCASE("constants below c") {
    auto rep = two_constants_check([](const CVector&) { return -1.5; }, K, fam, C, c, probes);
    CHECK(rep.min_slack >= c + 1.5 - 1e-12);
  }
  SUBCASE("squared norm with a cube on the edge") {
    EdgeSet cube;
    for (const auto& m : fam.members())
      for (int k = 0; k < grid->upper_arc_count(); ++k) {
        const CVector z = value_at(m.solution.z, M, k);
        if (z.imag().cwiseAbs().maxCoeff() <= 0.3) cube.points.push_back(z);
      }
    std::vector<CVector> pts;
    for (const auto& m : fam.members())
      for (int r : {8, 20}) pts.push_back(value_at(m.solution.z, r, 10 * r));
    // C bounds u on the whole domain, boundary arcs included.
    std::vector<CVector> domain;
    for (const auto& m : fam.members())
      for (int r : {M / 8, M / 4, M / 2, 3 * M / 4, M - 1, M})
        for (int k = 0; k < grid->boundary_count(); k += 2) domain.push_back(value_at(m.solution.z, r, k));
    const double Cmax = norm2.sampled_sup(domain), cmax = norm2.sampled_sup(cube.points);
    auto rep = two_constants_check(norm2, cube, fam, Cmax, cmax, pts, domain);
    CHECK(rep.covered == static_cast<int>(pts.size()));
    CHECK(rep.violations == 0);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(two_constants_check([](const CVector&) { return 4.0; }, K, fam, C, c, probes), InvalidArgument);
    CHECK_THROWS_AS(two_constants_check([](const CVector&) { return 0.0; }, K, fam, C, c, probes), InvalidArgument);
  }
}

TEST_CASE("non-tangential probes") {
  const auto& fam = model_family();
  auto wedge = WedgeModel::standard(2);
  const CVector q = model_image(fam.profile(), params(0.0, 1.0), cd(0.0, 1.0));
  const std::vector<double> radii = {0.2, 0.1, 0.05, 0.025};
  auto narrow = make_nontangential_region(wedge, q, 1.0, radii, 24);
  auto wide = make_nontangential_region(wedge, q, 4.0, radii, 24);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(narrow.samples[i].size() <= wide.samples[i].size());
    CHECK(narrow.samples[i].size() >= 1);
    for (const auto& p : wide.samples[i]) {
      CHECK(std::abs((p - q).norm() - radii[i]) < 1e-12);
      CHECK((p - q).norm() <= 4.0 * p.real().norm() + 1e-12);
    }
  }
  CHECK_THROWS_AS(make_nontangential_region(wedge, q, 0.5, radii, 4), InvalidArgument);

  SUBCASE("bounded functions") {
    auto rep = nontangential_limit_probe([](const CVector& z) { return std::cos(z.norm()); }, wide, fam);
    CHECK(rep.bounded_by(1.0));
    for (const auto& l : rep.levels) CHECK(l.covered > 0);
  }
  SUBCASE("logarithm of the distance to the edge decreases") {
    RealFunction u = [](const CVector& z) { return std::log(z.real().norm()); };
    auto rep = nontangential_limit_probe(u, wide, fam);
    for (std::size_t i = 1; i < rep.levels.size(); ++i) CHECK(rep.levels[i].sup < rep.levels[i - 1].sup);
  }
  SUBCASE("wider aperture dominates") {
    RealFunction u = [&](const CVector& z) { return (z - q).imag().norm(); };
    auto a = nontangential_limit_probe(u, narrow, fam);
    auto b = nontangential_limit_probe(u, wide, fam);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (a.levels[i].covered == 0) continue;
      CHECK(b.levels[i].sup >= a.levels[i].sup);
    }
  }
}
