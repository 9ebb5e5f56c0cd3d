#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <variant>

#include "stratafold/checks.hpp"
#include "stratafold/dec.hpp"
#include "stratafold/io.hpp"
#include "stratafold/parallel.hpp"
#include "stratafold/qgeom.hpp"
#include "stratafold/rng.hpp"
#include "stratafold/statgeom.hpp"

namespace stratafold::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  fs::path base_dir = ".";
  Json doc = Json::object();
  fs::path input;
  fs::path output;
  double t_max = 1.0;
  double dt = 1e-3;
  int sample_every = 1;
  int sites = 16;
  double spacing = 1.0;
  std::string format = "csv";
  std::uint64_t seed = 1;
  int samples = 0;
  int cases = 100;
  bool ring_from_flags = false;
};

// --- output tables ---------------------------------------------------------------

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Comment rows, each placed before the row with the given index.
  std::vector<std::pair<std::size_t, std::string>> notes;

  void note(std::string text) { notes.emplace_back(rows.size(), std::move(text)); }
};

struct Outcome {
  Table table;
  int code = kExitOk;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_number(*d) : "null";
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return Json(std::get<std::string>(c)).dump();
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  std::size_t next = 0;
  for (std::size_t r = 0; r <= t.rows.size(); ++r) {
    while (next < t.notes.size() && t.notes[next].first == r) os << "# " << t.notes[next++].second << '\n';
    if (r == t.rows.size()) break;
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) os << (i ? "," : "") << csv_cell(t.rows[r][i]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  os << "{\n  \"columns\": [";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? ", " : "") << Json(t.columns[i]).dump();
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) os << (i ? ", " : "") << json_cell(t.rows[r][i]);
    os << ']';
  }
  os << (t.rows.empty() ? "],\n" : "\n  ],\n") << "  \"notes\": [";
  for (std::size_t k = 0; k < t.notes.size(); ++k)
    os << (k ? ", " : "") << "{\"row\": " << t.notes[k].first << ", \"text\": " << Json(t.notes[k].second).dump()
       << '}';
  os << "]\n}\n";
}

// --- config helpers ------------------------------------------------------------------

double doc_number(const Json& doc, const char* key, double fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
  return it->get<double>();
}

long long doc_integer(const Json& doc, const char* key, long long fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an integer");
  return it->get<long long>();
}

int as_int(long long v, const char* what) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ConfigError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

// A JSON value that is either embedded or a path to a file.
Json embedded_or_file(const Json& value, const fs::path& base) {
  if (value.is_string()) return io::load_json(base / value.get<std::string>());
  return value;
}

// --- lindblad ---------------------------------------------------------------------

Json lindblad_document(const RunConfig& cfg) {
  if (const auto it = cfg.doc.find("spec"); it != cfg.doc.end()) return embedded_or_file(*it, cfg.base_dir);
  if (!cfg.input.empty()) return io::load_json(cfg.input);
  if (cfg.doc.contains("dim")) return cfg.doc;
  throw ConfigError("lindblad needs a spec: \"spec\" in the config, --input, or a top-level \"dim\"");
}

std::vector<qgeom::DensityState> initial_states(const RunConfig& cfg, const Json& spec_doc, int n) {
  const Json* src = nullptr;
  if (const auto it = cfg.doc.find("initial"); it != cfg.doc.end()) {
    src = &*it;
  } else if (const auto jt = spec_doc.find("initial"); jt != spec_doc.end()) {
    src = &*jt;
  }
  std::vector<qgeom::DensityState> out;
  if (src == nullptr) {
    const Json& top = cfg.doc.contains("coords") || cfg.doc.contains("rho") ? cfg.doc : spec_doc;
    if (top.contains("coords") || top.contains("rho")) {
      Json state = Json::object();
      for (const char* key : {"coords", "rho"})
        if (top.contains(key)) state[key] = top[key];
      out.push_back(io::state_from_json(state, n));
    } else {
      qgeom::Matrix ground = qgeom::Matrix::Zero(n, n);
      ground(0, 0) = 1.0;
      out.emplace_back(ground);
    }
    return out;
  }
  if (src->is_array()) {
    if (src->empty()) throw ConfigError("\"initial\" must not be empty");
    for (const Json& s : *src) out.push_back(io::state_from_json(s, n));
  } else {
    out.push_back(io::state_from_json(*src, n));
  }
  return out;
}

Outcome run_lindblad(const RunConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.t_max > 0.0)) throw ConfigError("t_max and dt must be positive");
  if (cfg.t_max < cfg.dt) throw ConfigError("t_max must be at least dt");
  if (cfg.sample_every < 1) throw ConfigError("sample_every must be positive");
  const Json spec_doc = lindblad_document(cfg);
  const qgeom::LindbladSpec spec = io::lindblad_from_json(spec_doc);
  const int n = spec.dim();
  const std::vector<qgeom::DensityState> states = initial_states(cfg, spec_doc, n);

  qgeom::IntegrateOptions opt;
  opt.t_max = cfg.t_max;
  opt.dt = cfg.dt;
  opt.sample_every = cfg.sample_every;
  const auto trajectories = parallel::integrate_batch(spec, states, opt);

  Outcome o;
  o.table.columns.push_back("tau");
  for (int i = 1; i < n * n; ++i) o.table.columns.push_back("x_" + std::to_string(i));
  for (const char* c : {"purity", "min_eig", "rank"}) o.table.columns.push_back(c);
  for (std::size_t t = 0; t < trajectories.size(); ++t) {
    if (trajectories.size() > 1) o.table.note("trajectory " + std::to_string(t));
    for (const qgeom::Sample& s : trajectories[t]) {
      std::vector<Cell> row{s.tau};
      for (int i = 1; i < n * n; ++i) row.emplace_back(s.coords[i]);
      row.emplace_back(s.purity);
      row.emplace_back(s.min_eigenvalue);
      row.emplace_back(static_cast<long long>(s.rank));
      o.table.rows.push_back(std::move(row));
    }
  }
  return o;
}

// --- dec-spectrum -----------------------------------------------------------------

dec::SimplicialRing ring_from_json(const Json& j, const RunConfig& cfg) {
  if (!j.is_object()) throw ConfigError("ring entries must be objects");
  if (const auto it = j.find("lengths"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("\"lengths\" must be an array");
    std::vector<double> l;
    for (const Json& v : *it) {
      if (!v.is_number()) throw ConfigError("\"lengths\" entries must be numbers");
      l.push_back(v.get<double>());
    }
    return dec::SimplicialRing(std::move(l));
  }
  return dec::SimplicialRing(as_int(doc_integer(j, "sites", cfg.sites), "sites"), doc_number(j, "spacing", cfg.spacing));
}

Outcome run_dec_spectrum(const RunConfig& cfg) {
  std::vector<dec::SimplicialRing> rings;
  if (cfg.ring_from_flags) {
    rings.emplace_back(cfg.sites, cfg.spacing);
  } else if (const auto it = cfg.doc.find("rings"); it != cfg.doc.end()) {
    if (!it->is_array() || it->empty()) throw ConfigError("\"rings\" must be a non-empty array");
    for (const Json& r : *it) rings.push_back(ring_from_json(r, cfg));
  } else if (cfg.doc.contains("lengths")) {
    rings.push_back(ring_from_json(cfg.doc, cfg));
  } else {
    rings.emplace_back(cfg.sites, cfg.spacing);
  }
  const auto spectra = parallel::dk_spectrum_batch(rings);

  Outcome o;
  o.table.columns = {"m", "k_m", "eig_numeric", "eig_analytic", "abs_error"};
  double worst = 0.0;
  bool any_error = false;
  for (std::size_t r = 0; r < rings.size(); ++r) {
    if (rings.size() > 1) {
      std::string label = "ring " + std::to_string(r) + " sites=" + std::to_string(rings[r].sites());
      if (rings[r].uniform()) label += " spacing=" + format_number(rings[r].edge_length(0));
      o.table.note(label);
    }
    for (const dec::SpectrumEntry& e : spectra[r]) {
      o.table.rows.push_back({static_cast<long long>(e.m), e.k, e.numeric, e.analytic, e.abs_error});
      if (!std::isnan(e.abs_error)) {
        worst = std::max(worst, e.abs_error);
        any_error = true;
      }
    }
  }
  o.table.note("max_abs_error=" + (any_error ? format_number(worst) : std::string("nan")));
  return o;
}

// --- algebra-check ------------------------------------------------------------------

Outcome run_algebra_check(const RunConfig& cfg) {
  if (cfg.cases < 1) throw ConfigError("cases must be positive");
  std::vector<checks::CheckResult> results;
  std::optional<Json> spec;
  std::string name = "input";
  if (!cfg.input.empty()) {
    spec = io::load_json(cfg.input);
    name = cfg.input.stem().string();
  } else if (const auto it = cfg.doc.find("algebra"); it != cfg.doc.end()) {
    spec = embedded_or_file(*it, cfg.base_dir);
    if (it->is_string()) name = fs::path(it->get<std::string>()).stem().string();
  } else if (cfg.doc.contains("dim")) {
    spec = cfg.doc;
  }
  if (spec) {
    Rng rng(cfg.seed);
    results = checks::exterior_suite(io::lie_algebra_from_json(*spec), name, rng, cfg.cases);
  } else {
    results = checks::default_suites(cfg.seed, cfg.cases);
  }

  Outcome o;
  o.table.columns = {"suite", "check", "value", "comparison", "threshold", "cases", "status"};
  int passed = 0;
  for (const checks::CheckResult& r : results) {
    o.table.rows.push_back({r.suite, r.name, r.value, std::string(r.at_least ? ">=" : "<="), r.threshold,
                            static_cast<long long>(r.cases), std::string(r.passed() ? "PASS" : "FAIL")});
    passed += r.passed() ? 1 : 0;
  }
  o.table.note("passed=" + std::to_string(passed) + "/" + std::to_string(results.size()));
  if (passed != static_cast<int>(results.size())) o.code = kExitInvariant;
  return o;
}

// --- fisher -----------------------------------------------------------------------

std::vector<statgeom::ProbabilityVector> fisher_points(const Json& j) {
  std::vector<statgeom::ProbabilityVector> out;
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    for (const Json& p : j) out.push_back(io::probability_from_json(p));
  } else {
    out.push_back(io::probability_from_json(j));
  }
  return out;
}

Outcome run_fisher(const RunConfig& cfg) {
  std::vector<statgeom::ProbabilityVector> points;
  if (!cfg.input.empty()) {
    const Json j = io::load_json(cfg.input);
    points = fisher_points(j.is_object() ? (j.contains("points") ? j["points"] : j.value("p", Json())) : j);
  } else if (const auto it = cfg.doc.find("points"); it != cfg.doc.end()) {
    points = fisher_points(embedded_or_file(*it, cfg.base_dir));
  } else if (const auto jt = cfg.doc.find("p"); jt != cfg.doc.end()) {
    points = fisher_points(*jt);
  } else if (cfg.samples > 0) {
    const int n = as_int(doc_integer(cfg.doc, "outcomes", 3), "outcomes");
    if (n < 2) throw ConfigError("outcomes must be at least 2");
    Rng rng(cfg.seed);
    for (int s = 0; s < cfg.samples; ++s) {
      Eigen::VectorXd p(n);
      for (int i = 0; i < n; ++i) p[i] = -std::log(1.0 - rng.uniform());
      points.emplace_back(p / p.sum(), 1e-10);
    }
  } else {
    throw ConfigError("fisher needs \"p\", \"points\", --input, or --samples");
  }
  const int n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw ConfigError("all probability vectors must have the same length");

  Outcome o;
  for (int i = 1; i <= n; ++i) o.table.columns.push_back("p_" + std::to_string(i));
  for (int i = 1; i <= n; ++i) o.table.columns.push_back("x_" + std::to_string(i));
  o.table.columns.push_back("residual");
  for (const auto& p : points) {
    // Worst residual over the tangent basis e_i - e_N.
    double residual = 0.0;
    for (int i = 0; i + 1 < n; ++i)
      for (int j = i; j + 1 < n; ++j) {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(n), v = Eigen::VectorXd::Zero(n);
        u[i] = 1.0;
        u[n - 1] = -1.0;
        v[j] = 1.0;
        v[n - 1] = -1.0;
        residual = std::max(residual, statgeom::pullback_residual(p, u, v));
      }
    const Eigen::VectorXd x = statgeom::sqrt_embed(p);
    std::vector<Cell> row;
    for (int i = 0; i < n; ++i) row.emplace_back(p[i]);
    for (int i = 0; i < n; ++i) row.emplace_back(x[i]);
    row.emplace_back(residual);
    o.table.rows.push_back(std::move(row));
  }
  return o;
}

// --- driver ------------------------------------------------------------------------

struct Flags {
  std::string config, input, output, format;
  double t_max = 0, dt = 0, spacing = 0;
  int sites = 0, sample_every = 0, samples = 0, cases = 0;
  std::uint64_t seed = 0;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--input", f.input, "Input spec file (overrides \"input\")");
  sub->add_option("--output", f.output, "Output file (default stdout)");
  sub->add_option("--t-max", f.t_max, "Integration horizon");
  sub->add_option("--dt", f.dt, "RK4 step");
  sub->add_option("--sample-every", f.sample_every, "Record every k-th step");
  sub->add_option("--sites", f.sites, "Ring sites N");
  sub->add_option("--spacing", f.spacing, "Ring edge length l");
  sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", f.seed, "RNG seed");
  sub->add_option("--samples", f.samples, "Random interior points (fisher)");
  sub->add_option("--cases", f.cases, "Random cases per identity (algebra-check)");
}

RunConfig resolve(const std::string& command, const CLI::App& sub, const Flags& f) {
  RunConfig cfg;
  cfg.command = command;
  if (!f.config.empty()) {
    cfg.doc = io::load_json(f.config);
    if (!cfg.doc.is_object()) throw ConfigError("config must be a JSON object");
    cfg.base_dir = fs::path(f.config).parent_path();
  }
  const Json& d = cfg.doc;
  const auto given = [&sub](const char* flag) { return sub.count(flag) > 0; };

  if (given("--input")) {
    cfg.input = f.input;
  } else if (const auto it = d.find("input"); it != d.end()) {
    if (!it->is_string()) throw ConfigError("\"input\" must be a path");
    cfg.input = cfg.base_dir / it->get<std::string>();
  }
  if (given("--output")) {
    cfg.output = f.output;
  } else if (const auto it = d.find("output"); it != d.end()) {
    if (!it->is_string()) throw ConfigError("\"output\" must be a path");
    cfg.output = cfg.base_dir / it->get<std::string>();
  }
  cfg.t_max = given("--t-max") ? f.t_max : doc_number(d, "t_max", cfg.t_max);
  cfg.dt = given("--dt") ? f.dt : doc_number(d, "dt", cfg.dt);
  cfg.sample_every = given("--sample-every") ? f.sample_every
                                             : as_int(doc_integer(d, "sample_every", cfg.sample_every), "sample_every");
  cfg.sites = given("--sites") ? f.sites : as_int(doc_integer(d, "sites", cfg.sites), "sites");
  cfg.spacing = given("--spacing") ? f.spacing : doc_number(d, "spacing", cfg.spacing);
  cfg.ring_from_flags = given("--sites") || given("--spacing");
  cfg.samples = given("--samples") ? f.samples : as_int(doc_integer(d, "samples", cfg.samples), "samples");
  cfg.cases = given("--cases") ? f.cases : as_int(doc_integer(d, "cases", cfg.cases), "cases");
  if (given("--seed")) {
    cfg.seed = f.seed;
  } else if (const auto it = d.find("seed"); it != d.end()) {
    if (!it->is_number_unsigned()) throw ConfigError("\"seed\" must be a non-negative integer");
    cfg.seed = it->get<std::uint64_t>();
  }
  if (given("--format")) {
    cfg.format = f.format;
  } else if (const auto it = d.find("format"); it != d.end()) {
    if (!it->is_string()) throw ConfigError("\"format\" must be \"csv\" or \"json\"");
    cfg.format = it->get<std::string>();
  }
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
  if (cfg.samples < 0) throw ConfigError("samples must be non-negative");
  return cfg;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stratafold: exterior calculus, lattice Dirac spectra and open quantum dynamics"};
  app.name("stratafold");
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"lindblad", "Integrate a Lindblad flow and write the trajectory"},
      {"dec-spectrum", "Dirac-Kahler spectrum of a periodic ring"},
      {"algebra-check", "Randomized invariant suites"},
      {"fisher", "Fisher-Rao pullback table"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    subs.push_back(app.add_subcommand(name, help));
    add_flags(subs.back(), flags);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink_out, sink_err;
    const int code = app.exit(e, sink_out, sink_err);
    out << sink_out.str();
    err << sink_err.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* chosen = nullptr;
  for (CLI::App* s : subs)
    if (s->parsed()) chosen = s;

  try {
    const RunConfig cfg = resolve(chosen->get_name(), *chosen, flags);
    Outcome o;
    if (cfg.command == "lindblad") {
      o = run_lindblad(cfg);
    } else if (cfg.command == "dec-spectrum") {
      o = run_dec_spectrum(cfg);
    } else if (cfg.command == "algebra-check") {
      o = run_algebra_check(cfg);
    } else {
      o = run_fisher(cfg);
    }
    std::ostringstream text;
    if (cfg.format == "json") {
      write_json(o.table, text);
    } else {
      write_csv(o.table, text);
    }
    if (cfg.output.empty()) {
      out << text.str();
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw ConfigError("cannot write " + cfg.output.string());
      file << text.str();
    }
    if (o.code == kExitInvariant) err << "invariant failure\n";
    return o.code;
  } catch (const PositivityViolation& e) {
    err << "error: " << e.what() << " (tau=" << format_number(e.tau())
        << ", min_eig=" << format_number(e.min_eigenvalue()) << ")\n";
    return kExitNumerical;
  } catch (const BoundaryError& e) {
    err << "error: boundary: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace stratafold::cli
