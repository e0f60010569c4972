#include "torelli/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "torelli/complex.hpp"
#include "torelli/config.hpp"
#include "torelli/encoding.hpp"
#include "torelli/twist_algebra.hpp"

namespace torelli {

namespace {

struct HashMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_path;
  int jobs = 1;
  bool verify = false;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  int genus = 0;
  std::string which = "tg";
  std::string inventory_path;
  std::string complex_path;
  std::string dot_path;
};

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err), start_(std::chrono::steady_clock::now()) {}
  void operator()(const std::string& msg) {
    const double t =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    err_ << "[" << std::fixed << std::setprecision(1) << t << "s] " << msg << "\n";
  }

 private:
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

ExperimentConfig load_config(const Options& o, bool required) {
  nlohmann::json j;
  if (!o.config_path.empty()) {
    try {
      j = read_json_file(o.config_path);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  } else if (required) {
    throw ConfigError("--config is required for this command");
  } else {
    j = standard_config(o.genus > 0 ? o.genus : 3).to_json();
  }
  if (o.genus > 0) j["genus"] = o.genus;
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must be key=value: " + kv);
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    try {
      j[key] = nlohmann::json::parse(value);
    } catch (const nlohmann::json::exception&) {
      j[key] = value;
    }
  }
  if (o.seed) j["seed"] = *o.seed;
  return ExperimentConfig::from_json(j);
}

/// Hash of the settings that determine the inventory.
std::string enumeration_hash(const ExperimentConfig& c) {
  nlohmann::json j = {{"genus", c.genus},       {"seeds", c.seeds},
                      {"generators", c.generators}, {"depth", c.depth},
                      {"weight_cap", c.weight_cap}, {"seed", c.seed},
                      {"max_configurations", c.max_configurations},
                      {"link_completion", c.link_completion}};
  return hex64(fnv1a(j.dump()));
}

nlohmann::json envelope(const std::string& command, const ExperimentConfig& c, const Triangulation& t,
                        nlohmann::json result) {
  return {{"tool", "torelli"},
          {"version", kToolVersion},
          {"command", command},
          {"config_hash", c.hash()},
          {"enumeration_hash", enumeration_hash(c)},
          {"triangulation", t.hash_hex()},
          {"result", std::move(result)}};
}

CurveInventory obtain_inventory(const Options& o, const ExperimentConfig& c, const SurfacePtr& s,
                                Logger& log) {
  if (!o.inventory_path.empty()) {
    const nlohmann::json j = read_json_file(o.inventory_path);
    if (j.value("triangulation", "") != s->hash_hex()) {
      throw HashMismatch("inventory belongs to a different triangulation");
    }
    if (j.value("enumeration_hash", "") != enumeration_hash(c)) {
      throw HashMismatch("inventory was enumerated with different settings");
    }
    log("loading inventory " + o.inventory_path);
    try {
      return CurveInventory::from_json(s, j.at("result"), o.jobs);
    } catch (const CurveError& e) {
      throw HashMismatch(e.what());
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed inventory: ") + e.what());
    }
  }
  log("enumerating genus " + std::to_string(c.genus) + ", depth " + std::to_string(c.depth) +
      ", weight cap " + std::to_string(c.weight_cap));
  CurveInventory inv = build_inventory(c, s, o.jobs);
  log("inventory has " + std::to_string(inv.size()) + " curves");
  return inv;
}

nlohmann::json warnings_for(const CurveInventory& inv) {
  nlohmann::json w = nlohmann::json::array();
  if (!inv.provenance().exhaustive) w.push_back("enumeration budget exhausted; inventory is partial");
  return w;
}

struct Outcome {
  nlohmann::json result;
  int code = kExitOk;
};

void attach_verification(Outcome& out, const std::vector<std::string>& issues) {
  out.result["verification"] = {{"checked", true}, {"issues", issues}};
  if (!issues.empty()) out.code = kExitInvariantViolation;
}

Outcome cmd_surface(const Options& o, const ExperimentConfig& c, const SurfacePtr& s) {
  const Triangulation& t = *s;
  const auto problems = validate(t);
  const HomologyBasis basis = homology_basis(t);
  Outcome out;
  out.result = {{"genus", t.genus()},
                {"num_vertices", t.num_vertices()},
                {"num_edges", t.num_edges()},
                {"num_faces", t.num_triangles()},
                {"euler_characteristic", t.euler_characteristic()},
                {"validation", problems},
                {"homology_pairing", basis.pairing},
                {"pairing_determinant", determinant(basis.pairing)},
                {"pairing_is_standard", basis.pairing == standard_symplectic(t.genus())},
                {"triangulation", t.to_json()}};
  (void)c;
  (void)o;
  if (!problems.empty()) out.code = kExitInvariantViolation;
  return out;
}

Outcome cmd_enumerate(const Options& o, const ExperimentConfig& c, const SurfacePtr& s, Logger& log) {
  CurveInventory inv = obtain_inventory(o, c, s, log);
  Outcome out;
  out.result = inv.to_json();
  out.result["warnings"] = warnings_for(inv);
  if (o.verify) {
    log("verifying cached invariants");
    attach_verification(out, inv.verify(o.jobs));
  }
  return out;
}

Outcome cmd_complex(const Options& o, const ExperimentConfig& c, const SurfacePtr& s, Logger& log,
                    std::string& dot) {
  if (o.which != "tg" && o.which != "tgs" && o.which != "tgs-genus1") {
    throw ConfigError("--which must be tg, tgs or tgs-genus1");
  }
  CurveInventory inv = obtain_inventory(o, c, s, log);
  Outcome out;
  std::vector<std::string> issues;
  if (o.which == "tg") {
    TorelliComplex tg(inv, o.jobs);
    log("TG has " + std::to_string(tg.vertices().size()) + " vertices");
    nlohmann::json cj = tg.to_json();
    cj["provenance"] = inv.provenance().to_json();
    out.result = {{"complex", cj}, {"components", component_report_json(tg.graph(), o.jobs)}};
    dot = tg.to_dot();
    if (o.verify) issues = verify_complex(tg, c.seed);
  } else {
    SeparatingComplex tgs = build_tgs(inv, o.which == "tgs-genus1");
    log("separating complex has " + std::to_string(tgs.curves.size()) + " vertices");
    nlohmann::json cj = tgs.to_json(inv);
    cj["provenance"] = inv.provenance().to_json();
    out.result = {{"complex", cj}, {"components", component_report_json(tgs.graph, o.jobs)}};
    dot = tgs.to_dot(inv);
    if (o.verify) issues = verify_complex(inv, tgs, c.seed);
  }
  out.result["warnings"] = warnings_for(inv);
  if (o.verify) {
    auto more = inv.verify(o.jobs);
    issues.insert(issues.end(), more.begin(), more.end());
    attach_verification(out, issues);
  }
  return out;
}

Outcome cmd_connectivity(const Options& o, const std::optional<ExperimentConfig>& c,
                         nlohmann::json& file) {
  if (o.complex_path.empty()) throw ConfigError("--complex is required");
  file = read_json_file(o.complex_path);
  if (c && file.value("config_hash", "") != c->hash()) {
    throw HashMismatch("complex was built from a different config");
  }
  Graph g;
  nlohmann::json kinds;
  try {
    const auto& cj = file.at("result").at("complex");
    const std::size_t n = cj.at("num_vertices").get<std::size_t>();
    g.adj.assign(n, {});
    for (const auto& e : cj.at("edges")) {
      const auto u = e.at(0).get<std::size_t>(), v = e.at(1).get<std::size_t>();
      if (u >= n || v >= n || u == v) throw InputError("edge out of range");
      g.adj[u].push_back(static_cast<int>(v));
      g.adj[v].push_back(static_cast<int>(u));
    }
    if (cj.at("num_edges").get<std::size_t>() != cj.at("edges").size()) {
      throw InputError("edge count does not match edge list");
    }
    std::map<std::string, int> counts;
    for (const auto& v : cj.at("vertices")) ++counts[v.at("type").get<std::string>()];
    kinds = counts;
    kinds["complex"] = cj.at("kind");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed complex file: ") + e.what());
  }
  for (auto& row : g.adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  Outcome out;
  out.result = component_report_json(g, o.jobs);
  out.result["kind"] = kinds["complex"];
  kinds.erase("complex");
  out.result["vertex_types"] = kinds;
  out.result["connected"] = out.result["num_components"] == 1;
  return out;
}

Outcome cmd_encoding(const Options& o, const ExperimentConfig& c, const SurfacePtr& s, Logger& log) {
  CurveInventory inv = obtain_inventory(o, c, s, log);
  TorelliComplex tg(inv, o.jobs);
  log("TG has " + std::to_string(tg.marked_triangles().size()) + " marked triangles");
  MoveGraph mg(tg, o.jobs);
  log("move graph has " + std::to_string(mg.size()) + " admissible pairs");
  EncodingParams p;
  p.soundness_samples = c.soundness_samples;
  p.completeness_samples = c.completeness_samples;
  p.separation_samples = c.separation_samples;
  p.budget = c.bfs_budget;
  p.escalations = c.escalations;
  p.seed = c.seed;
  p.jobs = o.jobs;
  Outcome out;
  out.result = encoding_experiment(mg, p);
  out.result["genus"] = c.genus;
  out.result["provenance"] = inv.provenance().to_json();
  nlohmann::json w = warnings_for(inv);
  const auto& comp = out.result["completeness"];
  if (comp["exhausted_frontier"].get<std::size_t>() > 0) {
    w.push_back("some same-decode pairs are not connected within the inventory");
  }
  if (comp["budget_cut"].get<std::size_t>() > 0) w.push_back("BFS budget exhausted for some pairs");
  out.result["warnings"] = w;
  std::vector<std::string> issues;
  if (out.result["soundness"]["preserved"] != out.result["soundness"]["sampled"] ||
      out.result["soundness"]["exhaustive_preserved"] != out.result["soundness"]["exhaustive_moves"]) {
    issues.push_back("a move changed the decoded curve");
  }
  if (out.result["separation"]["paths_found"] != 0 ||
      out.result["separation"]["mixed_decode_components"] != 0) {
    issues.push_back("pairs with different decodes are move-connected");
  }
  if (!out.result["decode_well_defined"].get<bool>()) issues.push_back("decode depends on certificate");
  if (o.verify) {
    auto more = inv.verify(o.jobs);
    auto cx = verify_complex(tg, c.seed);
    issues.insert(issues.end(), more.begin(), more.end());
    issues.insert(issues.end(), cx.begin(), cx.end());
    attach_verification(out, issues);
  } else if (!issues.empty()) {
    out.result["violations"] = issues;
    out.code = kExitInvariantViolation;
  }
  return out;
}

Outcome cmd_props(const Options& o, const ExperimentConfig& c, const SurfacePtr& s, Logger& log) {
  CurveInventory inv = obtain_inventory(o, c, s, log);
  TorelliComplex tg(inv, o.jobs);
  PropsParams p;
  p.power_samples = c.power_samples;
  p.non_marked_samples = c.non_marked_samples;
  p.scan_systems = c.scan_systems;
  p.seed = c.seed;
  p.jobs = o.jobs;
  log("checking twist subgroup ranks");
  Outcome out;
  out.result = props_report(tg, p);
  out.result["genus"] = c.genus;
  out.result["provenance"] = inv.provenance().to_json();
  out.result["warnings"] = warnings_for(inv);
  std::vector<std::string> issues;
  const auto& p7 = out.result["P7"];
  if (p7["triangle_passes"] != p7["triangle_checks"]) issues.push_back("a marked triangle fails the rank conditions");
  if (p7["non_marked_violations"] != p7["non_marked_checks"]) {
    issues.push_back("a non-marked triple satisfies the rank conditions");
  }
  if (out.result.contains("P5.2") && out.result["P5.2"]["systems_above_bound"] != 0) {
    issues.push_back("a disjoint system exceeds rank 2g-3");
  }
  if (out.result.contains("P6") && out.result["P6"]["separating_with_witness"] != 0) {
    issues.push_back("a separating twist has a rank-2 witness");
  }
  if (o.verify) {
    auto more = inv.verify(o.jobs);
    issues.insert(issues.end(), more.begin(), more.end());
    attach_verification(out, issues);
  } else if (!issues.empty()) {
    out.result["violations"] = issues;
    out.code = kExitInvariantViolation;
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite Torelli geometry experiments", "torelli"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.add_option("--config", o.config_path, "Experiment config file (JSON)");
  app.add_option("--out", o.out_path, "Write the report to this file instead of stdout");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--verify", o.verify, "Recompute every cached invariant");
  app.add_option("--seed", o.seed, "Override the config random seed");
  app.add_option("--set", o.overrides, "Override a config key (key=value)");
  auto* surface = app.add_subcommand("surface", "Build and validate the genus-g triangulation");
  surface->add_option("--genus", o.genus, "Genus (overrides the config)")->check(CLI::Range(2, 64));
  app.add_subcommand("enumerate", "Enumerate the curve inventory");
  auto* complex = app.add_subcommand("complex", "Build TG, TGS or the genus-one subcomplex");
  complex->add_option("--which", o.which, "tg, tgs or tgs-genus1");
  complex->add_option("--dot", o.dot_path, "Also write a DOT export here");
  auto* connectivity = app.add_subcommand("connectivity", "Component report for a complex file");
  connectivity->add_option("--complex", o.complex_path, "Output of the complex command")->required();
  app.add_subcommand("encoding", "Admissible pairs and the move calculus");
  app.add_subcommand("props", "Twist subgroup rank checks");
  for (auto* sub : {complex, app.get_subcommand("encoding"), app.get_subcommand("props"),
                    app.get_subcommand("enumerate")}) {
    sub->add_option("--inventory", o.inventory_path, "Reuse an inventory file");
  }
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kToolVersion) + "\n" : app.help());
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitMalformedInput;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  Logger log(err);
  try {
    Outcome result;
    nlohmann::json report;
    std::string dot;
    if (command == "connectivity") {
      std::optional<ExperimentConfig> c;
      if (!o.config_path.empty()) c = load_config(o, true);
      nlohmann::json file;
      result = cmd_connectivity(o, c, file);
      report = {{"tool", "torelli"},
                {"version", kToolVersion},
                {"command", command},
                {"config_hash", file.value("config_hash", "")},
                {"enumeration_hash", file.value("enumeration_hash", "")},
                {"triangulation", file.value("triangulation", "")},
                {"result", result.result}};
    } else {
      const ExperimentConfig c = load_config(o, command != "surface");
      const SurfacePtr s = config_surface(c);
      if (command == "surface") result = cmd_surface(o, c, s);
      if (command == "enumerate") result = cmd_enumerate(o, c, s, log);
      if (command == "complex") result = cmd_complex(o, c, s, log, dot);
      if (command == "encoding") result = cmd_encoding(o, c, s, log);
      if (command == "props") result = cmd_props(o, c, s, log);
      report = envelope(command, c, *s, result.result);
      std::string dot_path = o.dot_path;
      if (dot_path.empty() && c.outputs.count("dot")) dot_path = c.outputs.at("dot");
      if (!dot.empty() && !dot_path.empty()) write_text(dot_path, dot);
      if (o.out_path.empty() && c.outputs.count(command)) o.out_path = c.outputs.at(command);
    }
    const std::string text = report.dump(2) + "\n";
    if (o.out_path.empty()) {
      out << text;
    } else {
      write_text(o.out_path, text);
      log("wrote " + o.out_path);
    }
    if (result.code != kExitOk) err << "error: invariant violation (see report)\n";
    return result.code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformedInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformedInput;
  } catch (const HashMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitHashMismatch;
  } catch (const CurveError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformedInput;
  }
}

}  // namespace torelli
