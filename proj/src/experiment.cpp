#include "jdisc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "jdisc/chart.hpp"
#include "jdisc/psh.hpp"

namespace jdisc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ------------------------------------------------------------------ parsing

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(path + key, "missing");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

double number_or(const json& j, const std::string& key, double def, const std::string& path) {
  return j.contains(key) ? number(j.at(key), path + key) : def;
}

int integer_or(const json& j, const std::string& key, int def, const std::string& path) {
  return j.contains(key) ? integer(j.at(key), path + key) : def;
}

cd coefficient(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(path, "expected a number or [re, im]");
}

std::vector<int> powers(const json& j, int n, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ConfigError(path, "expected " + std::to_string(n) + " exponents");
  std::vector<int> p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int e = integer(j[i], path + "[" + std::to_string(i) + "]");
    if (e < 0) throw ConfigError(path, "exponents must be nonnegative");
    p.push_back(e);
  }
  return p;
}

Polynomial polynomial(const json& terms, int n, const std::string& path) {
  if (!terms.is_array()) throw ConfigError(path, "expected a list of terms");
  Polynomial p(n);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = path + "[" + std::to_string(i) + "].";
    const json& t = terms[i];
    p.add(Monomial{coefficient(require(t, "coefficient", tp), tp + "coefficient"),
                   t.contains("z") ? powers(t.at("z"), n, tp + "z") : std::vector<int>(n, 0),
                   t.contains("zbar") ? powers(t.at("zbar"), n, tp + "zbar") : std::vector<int>(n, 0)});
  }
  return p;
}

std::vector<double> value_list(const json& j, const std::string& path) {
  std::vector<double> v;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  } else if (j.is_object() && j.contains("values")) {
    return value_list(j.at("values"), path);
  } else if (j.is_object()) {
    const double lo = number(require(j, "min", path + "."), path + ".min");
    const double hi = number(require(j, "max", path + "."), path + ".max");
    const int count = integer(require(j, "count", path + "."), path + ".count");
    if (count < 1) throw ConfigError(path + ".count", "must be positive");
    if (hi < lo) throw ConfigError(path, "max below min");
    for (int i = 0; i < count; ++i) v.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  } else {
    throw ConfigError(path, "expected a list or {min, max, count}");
  }
  if (v.empty()) throw ConfigError(path, "no values");
  return v;
}

// ------------------------------------------------------------------ output

class TsvWriter {
 public:
  TsvWriter(const fs::path& path, const std::string& hash, const std::string& header) : out_(path) {
    if (!out_) throw Error("cannot write " + path.string());
    out_ << "# config_hash " << hash << "\n" << header << "\n";
  }
  template <class... T>
  void row(const T&... cols) {
    bool first = true;
    ((out_ << (first ? "" : "\t") << cell(cols), first = false), ...);
    out_ << "\n";
  }

 private:
  static std::string cell(double x) { return fmt(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(const std::string& s) { return s; }
  std::ofstream out_;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string hash;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw Error("artifact has no column " + name);
  }
  double value(std::size_t row, const std::string& name) const { return std::stod(rows[row][column(name)]); }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string s;
  while (std::getline(ss, s, '\t')) out.push_back(s);
  return out;
}

Table read_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("missing artifact " + path.string());
  Table t;
  std::string line;
  std::getline(in, line);
  if (line.rfind("# config_hash ", 0) != 0) throw Error("artifact without config hash: " + path.string());
  t.hash = line.substr(14);
  std::getline(in, line);
  t.header = split(line);
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split(line));
  return t;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("missing artifact " + path.string());
  return json::parse(in);
}

class StageTimer {
 public:
  explicit StageTimer(RunManifest& m, std::string name) : m_(m), start_(std::chrono::steady_clock::now()) {
    m_.stages.push_back({std::move(name), "running", 0.0, ""});
  }
  void finish(const std::string& status, const std::string& diagnostic = "") {
    auto& s = m_.stages.back();
    s.status = status;
    s.diagnostic = diagnostic;
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  RunManifest& m_;
  std::chrono::steady_clock::time_point start_;
};

int central_member(const DiscFamily& fam) {
  const auto& pg = fam.parameter_grid();
  DiscParameters mid;
  mid.c = RVector::Constant(fam.dimension() - 1, pg.c_values[pg.c_values.size() / 2]);
  mid.t = RVector::Constant(fam.dimension() - 1, pg.t_values[pg.t_values.size() / 2]);
  return fam.nearest_member(mid);
}

}  // namespace

// ------------------------------------------------------------------ config

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string ExperimentConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

ComplexMatrixField ExperimentConfig::structure() const {
  bool zero = true;
  for (const auto& row : entries)
    for (const auto& p : row) zero = zero && p.empty();
  if (zero) return ComplexMatrixField::zero(dimension, domain_radius);
  return ComplexMatrixField::polynomial(dimension, entries, domain_radius);
}

WedgeModel ExperimentConfig::wedge() const {
  if (rho.empty()) return WedgeModel::standard(dimension, tau, c_quad);
  std::vector<ScalarField> r;
  for (const auto& p : rho) r.push_back([p](const CVector& z) { return p(z).real(); });
  return WedgeModel(dimension, r, tau, c_quad, domain_radius);
}

EdgeProfile ExperimentConfig::profile() const {
  auto grid = DiscGrid::create(boundary_nodes, radial_nodes);
  if (profile_samples.empty()) return EdgeProfile::standard(grid);
  const auto& s = profile_samples;
  const int n = boundary_nodes;
  return EdgeProfile::from_function(grid, [&s, n](double theta) {
    const int k = static_cast<int>(std::lround(theta / (2.0 * kPi) * n)) % n;
    return s[k];
  });
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("$", "expected an object");
  ExperimentConfig c;
  c.source = j;
  c.hash = fnv1a(j.dump());
  c.name = j.value("name", std::string("experiment"));
  c.output = j.value("output", c.name);
  c.dimension = integer(require(j, "dimension", ""), "dimension");
  const int n = c.dimension;
  if (n < 2) throw ConfigError("dimension", "must be at least 2");
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();

  c.entries.assign(n, std::vector<Polynomial>(n, Polynomial(n)));
  if (j.contains("structure")) {
    const json& s = j.at("structure");
    c.domain_radius = number_or(s, "domain_radius", c.domain_radius, "structure.");
    if (!(c.domain_radius > 0.0)) throw ConfigError("structure.domain_radius", "must be positive");
    if (s.contains("entries")) {
      const json& e = s.at("entries");
      if (!e.is_array()) throw ConfigError("structure.entries", "expected a list");
      for (std::size_t i = 0; i < e.size(); ++i) {
        const std::string p = "structure.entries[" + std::to_string(i) + "].";
        const int row = integer(require(e[i], "row", p), p + "row");
        const int col = integer(require(e[i], "col", p), p + "col");
        if (row < 0 || row >= n || col < 0 || col >= n) throw ConfigError(p + "row", "index outside the dimension");
        c.entries[row][col] = polynomial(require(e[i], "terms", p), n, p + "terms");
      }
    }
  }

  if (j.contains("wedge")) {
    const json& w = j.at("wedge");
    c.tau = number_or(w, "tau", 0.0, "wedge.");
    c.c_quad = number_or(w, "c_quad", 0.0, "wedge.");
    c.delta = number_or(w, "delta", c.delta, "wedge.");
    if (c.tau < 0.0) throw ConfigError("wedge.tau", "must be nonnegative");
    if (c.delta <= c.tau) throw ConfigError("wedge.delta", "must exceed tau");
    if (w.contains("rho")) {
      const json& r = w.at("rho");
      if (!r.is_array() || static_cast<int>(r.size()) != n) throw ConfigError("wedge.rho", "expected one polynomial per dimension");
      for (int i = 0; i < n; ++i) c.rho.push_back(polynomial(r[i], n, "wedge.rho[" + std::to_string(i) + "]"));
    }
  }

  if (j.contains("grid")) {
    c.boundary_nodes = integer_or(j.at("grid"), "boundary_nodes", c.boundary_nodes, "grid.");
    c.radial_nodes = integer_or(j.at("grid"), "radial_nodes", c.radial_nodes, "grid.");
  }
  if (c.boundary_nodes < 8 || c.boundary_nodes % 4 != 0) throw ConfigError("grid.boundary_nodes", "must be a multiple of 4, at least 8");
  if (c.radial_nodes < 4) throw ConfigError("grid.radial_nodes", "must be at least 4");

  if (j.contains("profile")) {
    const json& p = j.at("profile");
    const std::string kind = p.value("kind", std::string("standard"));
    if (kind == "samples") {
      c.profile_samples = value_list(require(p, "values", "profile."), "profile.values");
      if (static_cast<int>(c.profile_samples.size()) != c.boundary_nodes)
        throw ConfigError("profile.values", "expected one sample per boundary node");
    } else if (kind != "standard") {
      throw ConfigError("profile.kind", "unknown profile '" + kind + "'");
    }
  }

  const json& par = require(j, "parameters", "");
  c.parameters.c_values = value_list(require(par, "c", "parameters."), "parameters.c");
  c.parameters.t_values = value_list(require(par, "t", "parameters."), "parameters.t");
  for (double t : c.parameters.t_values)
    if (!(t > 0.0)) throw ConfigError("parameters.t", "values must be strictly positive");

  if (j.contains("lambda")) {
    const json& l = j.at("lambda");
    c.lambdas = l.is_number() ? std::vector<double>{l.get<double>()} : value_list(l, "lambda");
  } else {
    c.lambdas = {0.0};
  }
  for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
    if (c.lambdas[i] < 0.0) throw ConfigError("lambda", "values must be nonnegative");
    if (i > 0 && c.lambdas[i] <= c.lambdas[i - 1]) throw ConfigError("lambda", "schedule must increase");
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    c.solver.tol = number_or(s, "tol", c.solver.tol, "solver.");
    c.solver.tol_cr = number_or(s, "tol_cr", c.solver.tol_cr, "solver.");
    c.solver.tol_bd = number_or(s, "tol_bd", c.solver.tol_bd, "solver.");
    c.solver.lambda_max = number_or(s, "lambda_max", c.solver.lambda_max, "solver.");
    c.solver.continuation_steps = integer_or(s, "continuation_steps", c.solver.continuation_steps, "solver.");
    if (c.solver.continuation_steps < 1) throw ConfigError("solver.continuation_steps", "must be positive");
  }
  if (c.lambdas.back() > c.solver.lambda_max) throw ConfigError("lambda", "exceeds solver.lambda_max");

  static const std::set<std::string> known = {"attachment", "foliation", "coverage",    "sheets",      "fill",
                                              "transversality", "density", "compactness", "containment", "injectivity"};
  if (j.contains("checks")) {
    const json& ch = j.at("checks");
    if (ch.is_string() && ch.get<std::string>() == "all") {
    } else if (ch.is_array()) {
      for (std::size_t i = 0; i < ch.size(); ++i) {
        if (!ch[i].is_string() || !known.count(ch[i].get<std::string>()))
          throw ConfigError("checks[" + std::to_string(i) + "]", "unknown check");
        c.checks.push_back(ch[i].get<std::string>());
      }
    } else {
      throw ConfigError("checks", "expected \"all\" or a list of names");
    }
  }

  if (j.contains("psh")) {
    const json& p = j.at("psh");
    c.psh = p.value("enabled", true);
    c.envelope_steps = integer_or(p, "envelope_steps", c.envelope_steps, "psh.");
    c.two_constants_points = integer_or(p, "two_constants_points", c.two_constants_points, "psh.");
    if (c.envelope_steps < 1) throw ConfigError("psh.envelope_steps", "must be positive");
  }
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", e.what());
  }
  return parse_config(j);
}

// ------------------------------------------------------------------ manifest

json RunManifest::to_json() const {
  json j;
  j["name"] = name;
  j["config_hash"] = config_hash;
  j["version"] = version;
  j["exit_code"] = exit_code;
  j["artifacts"] = artifacts;
  for (const auto& s : stages)
    j["stages"].push_back({{"name", s.name}, {"status", s.status}, {"seconds", s.seconds}, {"diagnostic", s.diagnostic}});
  for (const auto& [k, v] : summary) j["summary"].push_back({{"check", k}, {"passed", v}});
  return j;
}

RunManifest RunManifest::from_json(const json& j, const fs::path& directory) {
  RunManifest m;
  m.directory = directory;
  m.name = j.at("name");
  m.config_hash = j.at("config_hash");
  m.version = j.at("version");
  m.exit_code = j.at("exit_code");
  m.artifacts = j.at("artifacts").get<std::vector<std::string>>();
  if (j.contains("stages"))
    for (const auto& s : j.at("stages")) m.stages.push_back({s.at("name"), s.at("status"), s.at("seconds"), s.at("diagnostic")});
  if (j.contains("summary"))
    for (const auto& s : j.at("summary")) m.summary.emplace_back(s.at("check"), s.at("passed"));
  return m;
}

fs::path output_root() {
  const char* env = std::getenv("JDISC_OUTPUT_ROOT");
  return env && *env ? fs::path(env) : fs::path("runs");
}

RunManifest load_manifest(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / "manifest.json" : path;
  return RunManifest::from_json(read_json(file), file.parent_path());
}

// ------------------------------------------------------------------ run

RunManifest run_experiment(const ExperimentConfig& config, const fs::path& root, int threads) {
  RunManifest m;
  m.name = config.name;
  m.config_hash = config.hash_hex();
  m.version = kVersion;
  m.directory = root / config.output;
  fs::create_directories(m.directory);
  const std::string& hash = m.config_hash;
  const fs::path dir = m.directory;
  auto artifact = [&](const std::string& name) {
    m.artifacts.push_back(name);
    return dir / name;
  };
  auto done = [&](int code) {
    m.exit_code = code;
    write_json(dir / "manifest.json", m.to_json());
    return m;
  };
  {
    json cfg = config.source;
    cfg["config_hash"] = hash;
    write_json(artifact("config.json"), cfg);
  }

  // Structure and wedge.
  std::optional<ComplexMatrixField> A;
  std::optional<WedgeModel> wedge;
  std::optional<EdgeProfile> profile;
  {
    StageTimer st(m, "structure");
    try {
      A = config.structure();
      wedge = config.wedge();
      profile = config.profile();
      st.finish("ok");
    } catch (const Error& e) {
      st.finish("failed", e.what());
      return done(kExitConfigError);
    }
  }

  // Normalization diagnostics.
  {
    StageTimer st(m, "normalize");
    const CVector zero = CVector::Zero(config.dimension);
    json out{{"config_hash", hash}};
    if ((*A)(zero).norm() > 1e-12) {
      out["status"] = "skipped";
      out["reason"] = "A(0) is not zero";
      st.finish("skipped", "A(0) is not zero");
    } else {
      try {
        const auto norm = normalize_structure(*A);
        double coeff = 0.0, residual = 0.0;
        for (const auto& c : norm.coefficients) coeff = std::max(coeff, c.norm());
        std::vector<CMatrix> dz, dzbar;
        norm.field.derivatives(zero, dz, dzbar);
        for (const auto& d : dz) residual = std::max(residual, d.norm());
        out["status"] = "ok";
        out["coefficient_norm"] = coeff;
        out["normalized_dz_norm"] = residual;
        st.finish("ok");
      } catch (const Error& e) {
        st.finish("failed", e.what());
        return done(kExitSolverFailure);
      }
    }
    write_json(artifact("normalization.json"), out);
  }

  // Families along the lambda schedule.
  std::optional<DiscFamily> family;
  {
    StageTimer st(m, "family");
    try {
      TsvWriter discs(artifact("discs.tsv"), hash,
                      "lambda\tmember\tc\tt\tsolved\tresidual\tcr_residual\tattachment_error\twedge_violations\t"
                      "picard\tnewton");
      for (double lambda : config.lambdas) {
        family = solve_family(config.parameters, config.dimension, *A, *profile, lambda, config.solver, threads);
        const auto& mem = family->members();
        for (std::size_t i = 0; i < mem.size(); ++i) {
          const auto& s = mem[i].solution;
          std::string c, t;
          for (Eigen::Index k = 0; k < mem[i].params.c.size(); ++k) {
            c += (k ? "," : "") + fmt(mem[i].params.c(k));
            t += (k ? "," : "") + fmt(mem[i].params.t(k));
          }
          discs.row(lambda, i, c, t, mem[i].solved ? 1 : 0, s.residual, s.cr_residual, s.attachment_error,
                    s.wedge_violations, s.picard_iterations, s.newton_iterations);
        }
      }
      st.finish("ok");
    } catch (const FamilyFailure& e) {
      st.finish("failed", e.what());
      return done(kExitSolverFailure);
    } catch (const Error& e) {
      st.finish("failed", e.what());
      return done(kExitSolverFailure);
    }
  }

  const int centre = central_member(*family);
  {
    // Boundary arcs on E and the continuation curve of the central disc.
    const auto& grid = profile->grid();
    const int M = grid->radial_count();
    const int stride = std::max(1, grid->boundary_count() / 64);
    TsvWriter arcs(artifact("arcs.tsv"), hash, "member\tt\ttheta\t" + [&] {
      std::string h;
      for (int j = 0; j < config.dimension; ++j) h += (j ? "\t" : "") + ("y" + std::to_string(j + 1));
      return h;
    }());
    for (std::size_t i = 0; i < family->members().size(); ++i) {
      const auto& mem = family->members()[i];
      if (!mem.solved) continue;
      for (int k = 0; k < grid->upper_arc_count(); k += stride) {
        std::ostringstream row;
        row << i << "\t" << fmt(mem.params.t(0)) << "\t" << fmt(grid->angle(k));
        const CVector z = value_at(mem.solution.z, M, k);
        for (int j = 0; j < config.dimension; ++j) row << "\t" << fmt(z(j).imag());
        arcs.row(row.str());
      }
    }
    TsvWriter cont(artifact("continuation.tsv"), hash, "step\tlambda\tdistance");
    const auto& s = family->members()[centre].solution;
    const int K = static_cast<int>(s.continuation_distance.size());
    for (int k = 0; k < K; ++k) {
      const double frac = static_cast<double>(k + 1) / K;
      cont.row(k + 1, family->lambda() * frac * frac, s.continuation_distance[k]);
    }
  }

  // Solver tolerances.
  {
    bool ok = family->failure_rate() == 0.0;
    for (const auto& mem : family->members()) {
      const auto& s = mem.solution;
      ok = ok && s.residual <= config.solver.tol && s.cr_residual <= config.solver.tol_cr &&
           s.attachment_error <= config.solver.tol_bd && s.wedge_violations == 0;
    }
    m.summary.emplace_back("solver_tolerances", ok);
  }

  // Property checks.
  {
    StageTimer st(m, "properties");
    try {
      PropertyOptions opts;
      opts.select = std::set<std::string>(config.checks.begin(), config.checks.end());
      opts.delta = config.delta;
      opts.seed = static_cast<unsigned>(config.seed);
      const auto report = validate_properties(*family, *wedge, opts);
      json out{{"config_hash", hash}};
      for (const auto& c : report.checks) {
        out["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"margin", c.margin}, {"detail", c.detail}});
        m.summary.emplace_back(c.name, c.passed);
      }
      write_json(artifact("properties.json"), out);
      st.finish("ok");
    } catch (const Error& e) {
      st.finish("failed", e.what());
      return done(kExitSolverFailure);
    }
  }

  // Plurisubharmonicity checks.
  if (config.psh) {
    StageTimer st(m, "psh");
    try {
      const RealFunction norm2 = [](const CVector& z) { return z.squaredNorm(); };
      json out{{"config_hash", hash}};
      const auto sub = subharmonic_along_disc(norm2, family->members()[centre].solution.z);
      out["subharmonic"] = {{"margin", sub.margin}, {"grid_error", sub.grid_error}, {"passed", sub.passed}};
      m.summary.emplace_back("subharmonic_norm2", sub.passed);

      auto env = disc_envelope_iterate(family_disc_pool(*family, norm2), config.envelope_steps);
      bool monotone = true;
      {
        TsvWriter w(artifact("envelope.tsv"), hash, "point\t" + [&] {
          std::string h;
          for (int k = 0; k <= env.iterations(); ++k) h += (k ? "\t" : "") + ("v" + std::to_string(k));
          return h;
        }());
        for (Eigen::Index i = 0; i < env.values.front().size(); ++i) {
          std::ostringstream row;
          row << i;
          for (int k = 0; k <= env.iterations(); ++k) {
            row << "\t" << fmt(env.values[k](i));
            if (k > 0 && env.values[k](i) > env.values[k - 1](i)) monotone = false;
          }
          w.row(row.str());
        }
      }
      const double fixation = (env.values[1] - env.values[0]).cwiseAbs().maxCoeff();
      out["envelope"] = {{"monotone", monotone}, {"grid_error", env.grid_error}, {"first_step_change", fixation}};
      m.summary.emplace_back("envelope_monotone", monotone);

      // Two-constants check with K an edge cube |y| <= 0.3 sampled by attached arcs.
      const auto& grid = profile->grid();
      const int M = grid->radial_count();
      EdgeSet K;
      K.radius = 1e-6;
      for (const auto& mem : family->members()) {
        if (!mem.solved) continue;
        for (int k = 0; k < grid->upper_arc_count(); ++k) {
          const CVector z = value_at(mem.solution.z, M, k);
          if (z.imag().cwiseAbs().maxCoeff() <= 0.3) K.points.push_back(z);
        }
      }
      std::vector<CVector> pts;
      const auto& mem = family->members();
      for (int i = 0; i < config.two_constants_points && !mem.empty(); ++i) {
        const auto& f = mem[(static_cast<std::size_t>(i) * 7 + centre) % mem.size()];
        if (!f.solved) continue;
        const int ring = (M / 4) * (1 + i % 3) - 1;
        pts.push_back(value_at(f.solution.z, ring, (i * grid->boundary_count() / 8 + 3) % grid->boundary_count()));
      }
      std::vector<CVector> domain;
      for (const auto& f : mem) {
        if (!f.solved) continue;
        for (int r : {M / 8, M / 4, M / 2, 3 * M / 4, M - 1, M})
          for (int k = 0; k < grid->boundary_count(); k += 4) domain.push_back(value_at(f.solution.z, r, k));
      }
      const double C = norm2.sampled_sup(domain);
      const double c = K.empty() ? C : norm2.sampled_sup(K.points);
      const auto tc = two_constants_check(norm2, K, *family, C, c, pts, domain);
      {
        TsvWriter w(artifact("two_constants.tsv"), hash, "point\tomega\tslack");
        for (std::size_t i = 0; i < tc.slack.size(); ++i) w.row(i, tc.omega[i], tc.slack[i]);
      }
      out["two_constants"] = {{"covered", tc.covered}, {"uncovered", tc.uncovered}, {"violations", tc.violations},
                              {"max_violation", tc.max_violation}, {"grid_error", tc.grid_error}};
      m.summary.emplace_back("two_constants", tc.violations == 0);
      write_json(artifact("psh.json"), out);
      st.finish("ok");
    } catch (const Error& e) {
      st.finish("failed", e.what());
      return done(kExitSolverFailure);
    }
  }

  bool all = true;
  for (const auto& [k, v] : m.summary) all = all && v;
  return done(all ? kExitPass : kExitCheckFailure);
}

// ------------------------------------------------------------------ report

std::string render_report(const RunManifest& m, ReportFormat format) {
  for (const auto& a : m.artifacts)
    if (!fs::exists(m.directory / a)) throw Error("missing artifact " + (m.directory / a).string());
  auto has = [&](const std::string& a) { return std::find(m.artifacts.begin(), m.artifacts.end(), a) != m.artifacts.end(); };
  std::ostringstream out;

  if (format == ReportFormat::table) {
    out << "experiment\t" << m.name << "\nconfig_hash\t" << m.config_hash << "\nexit_code\t" << m.exit_code << "\n";
    if (has("discs.tsv")) {
      const Table d = read_table(m.directory / "discs.tsv");
      double res = 0, cr = 0, att = 0;
      int viol = 0, solved = 0;
      for (std::size_t i = 0; i < d.rows.size(); ++i) {
        res = std::max(res, d.value(i, "residual"));
        cr = std::max(cr, d.value(i, "cr_residual"));
        att = std::max(att, d.value(i, "attachment_error"));
        viol += static_cast<int>(d.value(i, "wedge_violations"));
        solved += static_cast<int>(d.value(i, "solved"));
      }
      out << "discs\t" << d.rows.size() << "\nsolved\t" << solved << "\nresidual\t" << fmt(res) << "\ncr_residual\t"
          << fmt(cr) << "\nattachment_error\t" << fmt(att) << "\nwedge_violations\t" << viol << "\n";
    }
    if (has("properties.json")) {
      for (const auto& c : read_json(m.directory / "properties.json").at("checks"))
        out << "check." << c.at("name").get<std::string>() << "\t" << (c.at("passed").get<bool>() ? "pass" : "FAIL")
            << "\t" << fmt(c.at("margin").get<double>()) << "\t" << c.at("detail").get<std::string>() << "\n";
    }
    if (has("envelope.tsv")) {
      const Table e = read_table(m.directory / "envelope.tsv");
      int bad = 0;
      for (const auto& row : e.rows)
        for (std::size_t k = 2; k < row.size(); ++k)
          if (std::stod(row[k]) > std::stod(row[k - 1])) ++bad;
      out << "envelope_points\t" << e.rows.size() << "\nenvelope_monotone\t" << (bad == 0 ? "yes" : "no") << "\n";
    }
    if (has("two_constants.tsv")) {
      const Table t = read_table(m.directory / "two_constants.tsv");
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t.rows.size(); ++i) worst = std::min(worst, t.value(i, "slack"));
      out << "two_constants_min_slack\t" << fmt(t.rows.empty() ? 0.0 : worst) << "\n";
    }
    for (const auto& [k, v] : m.summary) out << "summary." << k << "\t" << (v ? "pass" : "FAIL") << "\n";
    return out.str();
  }

  auto dump = [&](const std::string& name, const std::string& title) {
    if (!has(name)) return;
    const Table t = read_table(m.directory / name);
    out << "# " << title << "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "\t" : "") << t.header[i];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
      out << "\n";
    }
    out << "\n";
  };
  dump("arcs.tsv", "boundary arcs on E");
  dump("continuation.tsv", "continuation distance to the model disc");
  if (has("envelope.tsv")) {
    const Table e = read_table(m.directory / "envelope.tsv");
    out << "# envelope decay\niteration\tmean\tmax_decrease\n";
    for (std::size_t k = 1; k < e.header.size(); ++k) {
      double mean = 0.0, dec = 0.0;
      for (const auto& row : e.rows) {
        mean += std::stod(row[k]);
        if (k > 1) dec = std::max(dec, std::stod(row[k - 1]) - std::stod(row[k]));
      }
      out << k - 1 << "\t" << fmt(mean / std::max<std::size_t>(1, e.rows.size())) << "\t" << fmt(dec) << "\n";
    }
    out << "\n";
  }
  dump("two_constants.tsv", "harmonic measure profile");
  return out.str();
}

}  // namespace jdisc
