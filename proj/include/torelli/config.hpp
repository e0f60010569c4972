#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "torelli/inventory.hpp"

namespace torelli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One archivable experiment: surface, enumeration budget and sample counts.
struct ExperimentConfig {
  int genus = 3;
  nlohmann::json seeds = "standard";       // "standard" or a list of weight vectors
  nlohmann::json generators = "standard";  // same
  int depth = 2;
  int weight_cap = 200;
  std::uint64_t seed = 1;
  std::size_t max_configurations = 1000000;
  bool link_completion = true;
  std::size_t bfs_budget = 1000000;
  int escalations = 2;
  std::size_t soundness_samples = 10000;
  std::size_t completeness_samples = 200;
  std::size_t separation_samples = 200;
  std::size_t power_samples = 20;
  std::size_t non_marked_samples = 2000;
  bool scan_systems = true;
  std::map<std::string, std::string> outputs;  // command name -> path

  nlohmann::json to_json() const;
  /// Strict parse: unknown keys, wrong types and nonpositive budgets throw.
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// FNV-1a of the canonical serialization, as 16 hex digits.
  std::string hash() const;
};

/// Settings used for the reference runs at genus 2 .. 5.
ExperimentConfig standard_config(int genus);

SurfacePtr config_surface(const ExperimentConfig& c);
EnumerationParams enumeration_params(const ExperimentConfig& c, const SurfacePtr& s, int jobs);
/// Enumeration followed by link completion when enabled.
CurveInventory build_inventory(const ExperimentConfig& c, const SurfacePtr& s, int jobs);

}  // namespace torelli
