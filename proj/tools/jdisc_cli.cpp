#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "jdisc/experiment.hpp"

using namespace jdisc;

int main(int argc, char** argv) {
  CLI::App app{"Bishop disc experiments"};
  app.require_subcommand(1);

  std::string config_path, manifest_path, format = "table", root;
  int threads = 0;

  auto* run = app.add_subcommand("run", "solve, validate and write artifacts");
  run->add_option("config", config_path, "experiment configuration (JSON)")->required();
  run->add_option("--threads", threads, "worker threads, 0 = all cores");
  run->add_option("--output-root", root, "overrides JDISC_OUTPUT_ROOT");

  auto* report = app.add_subcommand("report", "render a finished run");
  report->add_option("manifest", manifest_path, "manifest.json or run directory")->required();
  report->add_option("--format", format)->check(CLI::IsMember({"table", "series"}));

  auto* validate = app.add_subcommand("validate", "check a configuration");
  validate->add_option("config", config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*validate) {
      const auto cfg = load_config(config_path);
      std::cout << cfg.name << " ok " << cfg.hash_hex() << "\n";
      return kExitPass;
    }
    if (*run) {
      const auto cfg = load_config(config_path);
      const auto m = run_experiment(cfg, root.empty() ? output_root() : std::filesystem::path(root), threads);
      for (const auto& s : m.stages)
        std::printf("%-12s %-8s %8.2fs %s\n", s.name.c_str(), s.status.c_str(), s.seconds, s.diagnostic.c_str());
      for (const auto& [name, ok] : m.summary) std::printf("%-20s %s\n", name.c_str(), ok ? "pass" : "FAIL");
      std::printf("manifest %s\n", (m.directory / "manifest.json").c_str());
      return m.exit_code;
    }
    const auto m = load_manifest(manifest_path);
    std::cout << render_report(m, format == "series" ? ReportFormat::series : ReportFormat::table);
    return kExitPass;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return *report ? kExitConfigError : kExitSolverFailure;
  }
}
