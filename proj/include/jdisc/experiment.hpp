#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "jdisc/polynomial.hpp"
#include "jdisc/properties.hpp"

namespace jdisc {

/// Schema violation; `field` is the dotted path of the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::string name;
  int dimension = 2;
  double domain_radius = 10.0;
  std::vector<std::vector<Polynomial>> entries;  // A as polynomial entries
  std::vector<Polynomial> rho;                   // rho_j = Re P_j; empty means x_j
  double tau = 0.0;
  double c_quad = 0.0;
  double delta = 0.25;
  std::vector<double> profile_samples;  // empty means the standard profile
  int boundary_nodes = 256;
  int radial_nodes = 64;
  ParameterGrid parameters;
  std::vector<double> lambdas;
  SolverOptions solver;
  std::vector<std::string> checks;  // empty runs every property check
  bool psh = true;
  int envelope_steps = 5;
  int two_constants_points = 8;
  std::string output;
  std::uint64_t seed = 1;
  std::uint64_t hash = 0;
  nlohmann::json source;

  ComplexMatrixField structure() const;
  WedgeModel wedge() const;
  EdgeProfile profile() const;
  std::string hash_hex() const;
};

std::uint64_t fnv1a(const std::string& bytes);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

struct StageRecord {
  std::string name;
  std::string status;  // ok, failed, skipped
  double seconds = 0.0;
  std::string diagnostic;
};

struct RunManifest {
  std::string name;
  std::string config_hash;
  std::string version;
  std::filesystem::path directory;
  std::vector<StageRecord> stages;
  std::vector<std::string> artifacts;
  std::vector<std::pair<std::string, bool>> summary;
  int exit_code = 0;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j, const std::filesystem::path& directory);
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;

// JDISC_OUTPUT_ROOT, else ./runs.
std::filesystem::path output_root();

RunManifest run_experiment(const ExperimentConfig& config, const std::filesystem::path& root, int threads = 0);

RunManifest load_manifest(const std::filesystem::path& path);

enum class ReportFormat { table, series };
// Renders from the stored artifacts only; throws Error if an artifact is missing.
std::string render_report(const RunManifest& manifest, ReportFormat format);

}  // namespace jdisc
