#pragma once

#include <set>
#include <string>
#include <vector>

#include "jdisc/disc_family.hpp"
#include "jdisc/wedge.hpp"

namespace jdisc {

struct PropertyCheck {
  std::string name;
  bool passed = false;
  double margin = 0.0;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
  const PropertyCheck* find(const std::string& name) const;
};

/// Inputs of the sampled property checks. Names accepted by `select`:
/// attachment, foliation, coverage, sheets, fill, transversality, density,
/// compactness, containment, injectivity. An empty selection runs all.
struct PropertyOptions {
  std::set<std::string> select;
  double delta = 0.25;
  double coverage_threshold = 0.99;
  int coverage_samples = 64;
  int edge_samples = 8;
  unsigned seed = 1;
  // Hypersurface {r = 0} containing E; default r = x_1 + 0.1 sum_{j>1} x_j.
  ScalarField hypersurface;
  // K = {iy : k_low <= y <= k_high} in E; default y_1 in [0, 1], |y_j| <= 1.
  RVector k_low, k_high;
  int k_min_nodes = 2;
  // Marked point of E for the density check.
  CVector marked_point;
};

PropertyReport validate_properties(const DiscFamily& family, const WedgeModel& wedge,
                                   const PropertyOptions& opts = {});

}  // namespace jdisc
