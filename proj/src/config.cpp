#include "torelli/config.hpp"

#include <set>

#include "torelli/complex.hpp"
#include "torelli/standard_curves.hpp"

namespace torelli {

namespace {

const std::set<std::string> kKeys = {
    "schema",          "schema_version",     "genus",
    "seeds",           "generators",         "depth",
    "weight_cap",      "seed",               "max_configurations",
    "link_completion", "bfs_budget",         "escalations",
    "soundness_samples", "completeness_samples", "separation_samples",
    "power_samples",   "non_marked_samples", "scan_systems",
    "outputs"};

void check_curve_spec(const nlohmann::json& j, const char* key) {
  if (j.is_string() && j.get<std::string>() == "standard") return;
  if (!j.is_array() || j.empty()) {
    throw ConfigError(std::string(key) + " must be \"standard\" or a nonempty list of weight vectors");
  }
  for (const auto& w : j) {
    if (!w.is_array()) throw ConfigError(std::string(key) + " entries must be weight vectors");
    for (const auto& x : w) {
      if (!x.is_number_integer() || x.get<long long>() < 0) {
        throw ConfigError(std::string(key) + " weights must be nonnegative integers");
      }
    }
  }
}

template <typename T>
T read(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("wrong type for ") + key);
  }
}

std::size_t read_count(const nlohmann::json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ConfigError(std::string(key) + " must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::vector<NormalCurve> curves_from_spec(const nlohmann::json& spec, const SurfacePtr& s,
                                          bool generators) {
  if (spec.is_string()) return generators ? standard_generators(s) : standard_seeds(s);
  std::vector<NormalCurve> out;
  for (const auto& w : spec) {
    try {
      out.push_back(normalize(s, w.get<std::vector<int>>()));
    } catch (const CurveError& e) {
      throw ConfigError(std::string("invalid curve in config: ") + e.what());
    }
  }
  return out;
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  return {{"schema", "torelli.config"},
          {"schema_version", 1},
          {"genus", genus},
          {"seeds", seeds},
          {"generators", generators},
          {"depth", depth},
          {"weight_cap", weight_cap},
          {"seed", seed},
          {"max_configurations", max_configurations},
          {"link_completion", link_completion},
          {"bfs_budget", bfs_budget},
          {"escalations", escalations},
          {"soundness_samples", soundness_samples},
          {"completeness_samples", completeness_samples},
          {"separation_samples", separation_samples},
          {"power_samples", power_samples},
          {"non_marked_samples", non_marked_samples},
          {"scan_systems", scan_systems},
          {"outputs", outputs}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key: " + key);
  }
  if (j.contains("schema") && j.at("schema") != "torelli.config") throw ConfigError("wrong schema");
  if (j.contains("schema_version") && j.at("schema_version") != 1) {
    throw ConfigError("unsupported schema version");
  }
  ExperimentConfig c;
  if (!j.contains("genus")) throw ConfigError("missing genus");
  c.genus = read<int>(j, "genus", 0);
  if (c.genus < 2) throw ConfigError("genus must be at least 2");
  c.seeds = j.value("seeds", nlohmann::json("standard"));
  c.generators = j.value("generators", nlohmann::json("standard"));
  check_curve_spec(c.seeds, "seeds");
  check_curve_spec(c.generators, "generators");
  c.depth = read<int>(j, "depth", c.depth);
  if (c.depth < 0) throw ConfigError("depth must be nonnegative");
  c.weight_cap = read<int>(j, "weight_cap", c.weight_cap);
  if (c.weight_cap <= 0) throw ConfigError("weight_cap must be positive");
  c.seed = read<std::uint64_t>(j, "seed", c.seed);
  c.max_configurations = read_count(j, "max_configurations", c.max_configurations);
  c.link_completion = read<bool>(j, "link_completion", c.link_completion);
  c.bfs_budget = read_count(j, "bfs_budget", c.bfs_budget);
  c.escalations = read<int>(j, "escalations", c.escalations);
  if (c.escalations < 0) throw ConfigError("escalations must be nonnegative");
  c.soundness_samples = read_count(j, "soundness_samples", c.soundness_samples);
  c.completeness_samples = read_count(j, "completeness_samples", c.completeness_samples);
  c.separation_samples = read_count(j, "separation_samples", c.separation_samples);
  c.power_samples = read_count(j, "power_samples", c.power_samples);
  c.non_marked_samples = read_count(j, "non_marked_samples", c.non_marked_samples);
  c.scan_systems = read<bool>(j, "scan_systems", c.scan_systems);
  c.outputs = read<std::map<std::string, std::string>>(j, "outputs", {});
  return c;
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a(to_json().dump())); }

ExperimentConfig standard_config(int genus) {
  ExperimentConfig c;
  c.genus = genus;
  c.weight_cap = 200;
  c.seed = 1;
  switch (genus) {
    case 2:
    case 3:
      c.depth = 4;
      break;
    case 4:
      c.depth = 2;
      break;
    default:
      c.depth = 2;
      c.scan_systems = false;
      break;
  }
  return c;
}

SurfacePtr config_surface(const ExperimentConfig& c) {
  return std::make_shared<const Triangulation>(build_closed_surface(c.genus));
}

EnumerationParams enumeration_params(const ExperimentConfig& c, const SurfacePtr& s, int jobs) {
  EnumerationParams p;
  p.seeds = curves_from_spec(c.seeds, s, false);
  p.generators = curves_from_spec(c.generators, s, true);
  p.depth = c.depth;
  p.weight_cap = c.weight_cap;
  p.seed = c.seed;
  p.max_configurations = c.max_configurations;
  p.jobs = jobs;
  return p;
}

CurveInventory build_inventory(const ExperimentConfig& c, const SurfacePtr& s, int jobs) {
  CurveInventory inv = enumerate_curves(s, enumeration_params(c, s, jobs));
  return c.link_completion ? complete_links(inv, jobs) : inv;
}

}  // namespace torelli
