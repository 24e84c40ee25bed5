#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "jdisc/experiment.hpp"

using namespace jdisc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kConfigs = JDISC_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("jdisc_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json bundled(const std::string& name) { return json::parse(slurp(kConfigs / (name + ".json"))); }

std::string field_of(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

int cli(const std::string& args) {
  const int status = std::system((std::string(JDISC_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("fnv-1a") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("configuration schema") {
  const json base = bundled("model_flat");
  const auto cfg = parse_config(base);
  CHECK(cfg.dimension == 2);
  CHECK(cfg.parameters.c_values.size() == 5);
  CHECK(cfg.lambdas == std::vector<double>{0.0});
  CHECK(cfg.structure().is_zero());
  CHECK(cfg.hash == parse_config(base).hash);

  const auto pert = parse_config(bundled("perturbed_small_lambda"));
  CHECK(pert.parameters.c_values == std::vector<double>{-0.5, -0.25, 0.0, 0.25, 0.5});
  const CVector z = (CVector(2) << cd(0.1, 0.2), cd(0.3, -0.4)).finished();
  CHECK(std::abs(pert.structure()(z)(0, 1) - cd(0.3, 0.4)) < 1e-15);
  CHECK(pert.structure()(z)(1, 0) == cd(0.0));
  CHECK(pert.hash != cfg.hash);

  json j = base;
  j["parameters"]["t"]["values"] = {0.0, 1.0};
  CHECK(field_of(j) == "parameters.t");
  j = base;
  j.erase("dimension");
  CHECK(field_of(j) == "dimension");
  j = base;
  j["structure"]["entries"] = {{{"row", 2}, {"col", 0}, {"terms", json::array()}}};
  CHECK(field_of(j) == "structure.entries[0].row");
  j = base;
  j["structure"]["entries"] = {{{"row", 0}, {"col", 1}, {"terms", {{{"coefficient", 1.0}, {"zbar", {0}}}}}}};
  CHECK(field_of(j) == "structure.entries[0].terms[0].zbar");
  j = base;
  j["profile"] = {{"kind", "samples"}, {"values", {0.0, -1.0}}};
  CHECK(field_of(j) == "profile.values");
  j = base;
  j["lambda"] = {0.1, 0.05};
  CHECK(field_of(j) == "lambda");
  j = base;
  j["checks"] = {"attachment", "nonsense"};
  CHECK(field_of(j) == "checks[1]");
  j = base;
  j["wedge"]["delta"] = 0.0;
  CHECK(field_of(j) == "wedge.delta");
}

TEST_CASE("model_flat run") {
  const auto cfg = load_config(kConfigs / "model_flat.json");
  const fs::path a = scratch("flat_a"), b = scratch("flat_b");
  const auto m = run_experiment(cfg, a);
  CHECK(m.exit_code == kExitPass);
  for (const auto& [name, ok] : m.summary) {
    CAPTURE(name);
    CHECK(ok);
  }
  // Every artifact exists and carries the hash.
  for (const auto& art : m.artifacts) {
    const std::string text = slurp(m.directory / art);
    CHECK(text.find(cfg.hash_hex()) != std::string::npos);
  }
  const auto props = json::parse(slurp(m.directory / "properties.json"));
  for (const auto& c : props.at("checks")) CHECK(c.at("margin").get<double>() > 0.0);

  const auto table = render_report(load_manifest(m.directory), ReportFormat::table);
  CHECK(table.find("attachment_error\t0\n") != std::string::npos);
  CHECK(table.find("envelope_monotone\tyes") != std::string::npos);
  const auto series = render_report(load_manifest(m.directory / "manifest.json"), ReportFormat::series);
  CHECK(series.find("# boundary arcs on E") != std::string::npos);
  CHECK(series.find("# envelope decay") != std::string::npos);

  // Determinism of the numerical artifacts.
  run_experiment(cfg, b);
  for (const char* art : {"discs.tsv", "arcs.tsv", "properties.json", "envelope.tsv", "two_constants.tsv", "psh.json"})
    CHECK(slurp(a / "model_flat" / art) == slurp(b / "model_flat" / art));

  fs::remove(a / "model_flat" / "envelope.tsv");
  CHECK_THROWS_AS(render_report(load_manifest(a / "model_flat"), ReportFormat::table), Error);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("perturbed_small_lambda run") {
  const auto cfg = load_config(kConfigs / "perturbed_small_lambda.json");
  const fs::path root = scratch("perturbed");
  const auto m = run_experiment(cfg, root);
  CHECK(m.exit_code == kExitPass);
  std::istringstream discs(slurp(m.directory / "discs.tsv"));
  std::string line;
  std::getline(discs, line);
  std::getline(discs, line);
  int rows = 0;
  while (std::getline(discs, line)) {
    double lambda, residual, cr, att;
    int member, solved, viol;
    std::string c, t;
    std::istringstream ls(line);
    ls >> lambda >> member >> c >> t >> solved >> residual >> cr >> att >> viol;
    CHECK(solved == 1);
    CHECK(residual <= 1e-9);
    CHECK(cr <= 1e-7);
    CHECK(att <= 1e-8);
    CHECK(viol == 0);
    ++rows;
  }
  CHECK(rows == 25);
  // Distance to the model disc along the schedule shrinks to zero as lambda -> 0.
  std::istringstream cont(slurp(m.directory / "continuation.tsv"));
  std::getline(cont, line);
  std::getline(cont, line);
  double prev_l = 0.0, prev_d = 0.0;
  while (std::getline(cont, line)) {
    int step;
    double l, d;
    std::istringstream(line) >> step >> l >> d;
    CHECK(l > prev_l);
    CHECK(d > prev_d);
    CHECK(d / l < 1.0);
    prev_l = l;
    prev_d = d;
  }
  fs::remove_all(root);
}

TEST_CASE("command line exit codes") {
  const fs::path root = scratch("cli");
  const fs::path bad = root / "bad.json";
  json j = bundled("model_flat");
  j["parameters"]["t"] = {0.0, 1.0};
  std::ofstream(bad) << j.dump();
  CHECK(cli("validate " + (kConfigs / "model_flat.json").string()) == 0);
  CHECK(cli("validate " + bad.string()) == 2);
  CHECK(cli("run " + bad.string()) == 2);
  CHECK(cli("validate " + (root / "missing.json").string()) == 2);

  // A check failure: a single disc cannot pass the density check.
  json f = bundled("model_flat");
  f["grid"] = {{"boundary_nodes", 64}, {"radial_nodes", 16}};
  f["parameters"]["c"] = {0.0};
  f["parameters"]["t"] = {1.0};
  f["checks"] = {"density"};
  f["psh"]["enabled"] = false;
  std::ofstream(root / "sparse.json") << f.dump();
  CHECK(cli("run " + (root / "sparse.json").string() + " --output-root " + root.string()) == 1);
  CHECK(cli("report " + (root / "model_flat").string()) == 0);
  CHECK(cli("report " + (root / "nowhere").string()) == 2);

  // Solver failure: a structure whose domain excludes the discs.
  json s = f;
  s["structure"] = {{"domain_radius", 0.01},
                    {"entries", {{{"row", 0}, {"col", 1}, {"terms", {{{"coefficient", 1.0}, {"zbar", {0, 1}}}}}}}}};
  s["lambda"] = 0.1;
  s["output"] = "escape";
  std::ofstream(root / "escape.json") << s.dump();
  CHECK(cli("run " + (root / "escape.json").string() + " --output-root " + root.string()) == 3);
  fs::remove_all(root);
}
