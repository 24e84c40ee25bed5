#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "jdisc/disc_family.hpp"
#include "jdisc/wedge.hpp"

namespace jdisc {

enum class Regularity { continuous, upper_semicontinuous, arbitrary };

/// Real function on the chart with values in [-inf, inf). NaN and +inf are rejected on evaluation.
class RealFunction {
 public:
  RealFunction() = default;
  template <class F>
    requires std::is_invocable_r_v<double, F, const CVector&>
  RealFunction(F f, Regularity r = Regularity::continuous) : f_(std::move(f)), regularity_(r) {}

  double operator()(const CVector& z) const;
  Regularity regularity() const { return regularity_; }
  // Largest sampled value; throws if a sample is +inf or NaN.
  double sampled_sup(const std::vector<CVector>& points) const;

 private:
  ScalarField f_;
  Regularity regularity_ = Regularity::continuous;
};

struct SubharmonicReport {
  double margin = 0.0;      // min over sub-circles of (circle mean - centre value)
  double grid_error = 0.0;  // quadrature discrepancy between full and half resolution means
  bool passed = false;      // margin >= -5 grid_error
  cd worst_center;
  double worst_radius = 0.0;
};

struct SubharmonicOptions {
  int circles = 6;
  int circle_nodes = 48;
  double max_center_radius = 0.7;
  int ring_stride = 8;
  int angle_stride = 32;
};

// Discrete sub-mean-value test of u o z on concentric sub-circles about interior nodes.
SubharmonicReport subharmonic_along_disc(const RealFunction& u, const DiscMap& z, const SubharmonicOptions& opts = {});

/// A disc of the envelope pool: centre sample index, boundary sample indices and
/// quadrature weights (nonnegative, summing to one).
struct PoolDisc {
  int center = 0;
  std::vector<int> boundary;
  std::vector<double> weights;
};

struct EnvelopeState {
  std::vector<CVector> sample_points;
  std::vector<char> is_center;  // centres must carry at least one pool disc
  std::vector<RVector> values;  // v_0, v_1, ...
  std::vector<PoolDisc> pool;
  double grid_error = 0.0;

  int iterations() const { return static_cast<int>(values.size()) - 1; }
  const RVector& current() const { return values.back(); }
  // v_{m-1} - v_m per sample (zero before the first iteration).
  RVector last_delta() const;
};

// Linear discs p + r zeta w about each centre for every direction and radius.
// Their boundary nodes are appended as non-centre samples.
EnvelopeState linear_disc_pool(const std::vector<CVector>& centers, const std::vector<CVector>& directions,
                               const std::vector<double>& radii, int boundary_nodes, const RealFunction& v);

// Sub-discs of the family members: for a node a and any larger ring r the disc
// zeta -> r m_{a/r}(zeta) is J-holomorphic after composition with the member, with
// boundary average the Poisson integral over that ring. Discs with |a| / r above
// max_ratio are left out; nodes outside radius max_ratio keep only the constant disc.
EnvelopeState family_disc_pool(const DiscFamily& family, const RealFunction& v, int ring_stride = 8,
                               int angle_stride = 8, double max_ratio = 0.75);

// Appends `steps` iterates v_m(p) = min(v_{m-1}(p), min over pool discs of the boundary mean).
EnvelopeState disc_envelope_iterate(EnvelopeState state, int steps);

// Whether phi <= v on the samples and phi satisfies the sub-mean-value inequality on
// every pool disc (within tol); such phi must stay below every iterate.
bool is_pool_subharmonic_minorant(const EnvelopeState& state, const RVector& phi, double tol = 1e-12);

// Half-open lattice cells of side `scale`; u*(p) = max(u(p), sup of u over interior
// cell samples). Continuous and upper semicontinuous inputs are returned unchanged.
RealFunction upper_regularize(const RealFunction& u, double scale, int samples_per_side = 3);

/// Subset of the edge given by sample points; membership within `radius` of a sample.
struct EdgeSet {
  std::vector<CVector> points;
  double radius = 1e-6;
  bool contains(const CVector& z) const;
  bool empty() const { return points.empty(); }
};

struct MeasureBound {
  bool covered = false;
  double lower = 0.0;
  double upper = 1.0;
  DiscParameters params;
  cd zeta;
  double arc_length = 0.0;
};

// Harmonic measure at the disc coordinate of the upper-arc runs whose images lie in K.
MeasureBound p_measure_upper_bound(const EdgeSet& K, const DiscFamily& family, const CVector& query);
// Same bound for a known disc and coordinate.
MeasureBound p_measure_on_disc(const EdgeSet& K, const DiscMap& z, cd zeta);

struct TwoConstantsReport {
  int covered = 0;
  int uncovered = 0;
  int violations = 0;         // beyond 2 grid_error
  double max_violation = 0.0;  // max of u(p) - bound, may be negative
  double min_slack = 0.0;
  double grid_error = 0.0;
  std::vector<double> slack;  // bound - u(p) per covered point
  std::vector<double> omega;
};

TwoConstantsReport two_constants_check(const RealFunction& u, const EdgeSet& K, const DiscFamily& family, double C,
                                       double c, const std::vector<CVector>& points,
                                       const std::vector<CVector>& domain_samples = {});

struct NonTangentialRegion {
  CVector vertex;
  double alpha = 1.0;
  std::vector<double> radii;
  std::vector<std::vector<CVector>> samples;  // per radius
};

// Samples of {p in wedge: |w(p) - w(q)| <= alpha |Re w(p)|} at the given distances, w
// the model chart. A fixed stream of directions is filtered by the cone, so regions of
// larger aperture contain those of smaller aperture.
NonTangentialRegion make_nontangential_region(const WedgeModel& wedge, const CVector& vertex, double alpha,
                                              const std::vector<double>& radii, int draws, std::uint64_t seed = 1);

struct ProbeLevel {
  double radius = 0.0;
  double sup = 0.0;
  int covered = 0;
  int uncovered = 0;
  int touching = 0;  // covering disc attached through the vertex, excluded
};

struct ProbeReport {
  std::vector<ProbeLevel> levels;
  bool bounded_by(double C, double tol = 0.0) const;
};

ProbeReport nontangential_limit_probe(const RealFunction& u, const NonTangentialRegion& region,
                                      const DiscFamily& family);

}  // namespace jdisc
