#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jdisc/disc_solver.hpp"

namespace jdisc {

/// Rectangular parameter grid: every c_j runs over c_values and every t_j over t_values.
struct ParameterGrid {
  std::vector<double> c_values;
  std::vector<double> t_values;
};

struct FamilyMember {
  DiscParameters params;
  std::vector<int> c_index;
  std::vector<int> t_index;
  bool solved = false;
  std::string failure;
  DiscSolution solution;
};

/// Point of a stored disc, used by the spatial index.
struct FamilySample {
  CVector point;
  int member;
  cd zeta;
};

class DiscFamily {
 public:
  DiscFamily(ParameterGrid grid, int n, double lambda, ComplexMatrixField A, EdgeProfile profile, SolverOptions opts);

  int dimension() const { return n_; }
  double lambda() const { return lambda_; }
  const ParameterGrid& parameter_grid() const { return grid_; }
  const std::vector<FamilyMember>& members() const { return members_; }
  std::vector<FamilyMember>& members() { return members_; }
  const ComplexMatrixField& structure() const { return a_; }
  const EdgeProfile& profile() const { return profile_; }
  const SolverOptions& options() const { return opts_; }

  double failure_rate() const;
  bool in_box(const DiscParameters& p, double slack = 1e-9) const;
  // Index of the member at the given grid indices, or -1.
  int find(const std::vector<int>& c_index, const std::vector<int>& t_index) const;
  // Solved members differing by one grid step in one coordinate.
  std::vector<int> neighbours(int member) const;
  // Solved member closest in parameter space.
  int nearest_member(const DiscParameters& p) const;

  void build_index(int ring_stride = 4, int angle_stride = 8);
  const std::vector<FamilySample>& samples() const { return samples_; }
  const FamilySample* nearest_sample(const CVector& point) const;

 private:
  ParameterGrid grid_;
  int n_;
  double lambda_;
  ComplexMatrixField a_;
  EdgeProfile profile_;
  SolverOptions opts_;
  std::vector<FamilyMember> members_;
  std::vector<FamilySample> samples_;
};

// Solves every member of the grid at the given lambda. Individual failures are
// recorded; more than 10% failures raise FamilyFailure.
DiscFamily solve_family(const ParameterGrid& grid, int n, const ComplexMatrixField& A, const EdgeProfile& profile,
                        double lambda, const SolverOptions& opts = {}, int threads = 0);

// The disc at arbitrary parameters, warm-started from the nearest member.
DiscSolution disc_at(const DiscFamily& family, const DiscParameters& p);

struct Location {
  bool covered = false;
  DiscParameters params;
  cd zeta;
  double error = 0.0;
  int solves = 0;
};

// (c, t, zeta) with z(c, t)(zeta) = point, or covered = false.
Location evaluation_map(const DiscFamily& family, const CVector& point, double tol = 1e-10);
// Boundary version for a point of E = iR^n at fixed t: (c, theta) with z(c, t)(e^{i theta}) = point.
Location locate_on_edge(const DiscFamily& family, const CVector& point, const RVector& t, double tol = 1e-10);

// Model (lambda = 0) image and its inverse on the wedge {x_j < 0}.
CVector model_image(const EdgeProfile& profile, const DiscParameters& p, cd zeta);
std::optional<std::pair<DiscParameters, cd>> model_inverse(const EdgeProfile& profile, const CVector& point,
                                                           cd zeta_guess = cd(-0.3, 0.0));

}  // namespace jdisc
