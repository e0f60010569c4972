#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "torelli/cli.hpp"
#include "torelli/config.hpp"

using namespace torelli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "torelli");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "torelli_cli_test";
  fs::create_directories(p);
  return p;
}

std::string write_config(const std::string& name, const nlohmann::json& j) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json small_config() {
  ExperimentConfig c = standard_config(4);
  c.depth = 1;
  c.soundness_samples = 300;
  c.completeness_samples = 30;
  c.separation_samples = 30;
  c.power_samples = 3;
  return c.to_json();
}

}  // namespace

TEST_CASE("config round trip and strict parsing") {
  const ExperimentConfig c = standard_config(3);
  const ExperimentConfig d = ExperimentConfig::from_json(c.to_json());
  CHECK(d.to_json() == c.to_json());
  CHECK(d.hash() == c.hash());
  nlohmann::json j = c.to_json();
  j["depht"] = 3;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
  j = c.to_json();
  j["weight_cap"] = 0;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
  j = c.to_json();
  j["genus"] = "three";
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
  j = c.to_json();
  j.erase("genus");
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
  j = c.to_json();
  j["seeds"] = nlohmann::json::array({nlohmann::json::array({1, -2})});
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
}

TEST_CASE("shipped configs match the standard settings") {
  const char* docs = std::getenv("TORELLI_DOCS");
  REQUIRE(docs != nullptr);
  for (int g = 2; g <= 5; ++g) {
    std::ifstream in(fs::path(docs) / "configs" / ("g" + std::to_string(g) + ".json"));
    REQUIRE(in.good());
    const ExperimentConfig c = ExperimentConfig::from_json(nlohmann::json::parse(in));
    CHECK(c.hash() == standard_config(g).hash());
  }
}

TEST_CASE("surface command") {
  const Run r = run({"surface", "--genus", "3"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["tool"] == "torelli");
  CHECK(j["version"] == kToolVersion);
  CHECK(j["command"] == "surface");
  CHECK(j["result"]["num_edges"] == 15);
  CHECK(j["result"]["pairing_is_standard"] == true);
  CHECK(j["result"]["validation"].empty());
}

TEST_CASE("usage and config errors exit with code 2") {
  CHECK(run({}).code == kExitMalformedInput);
  CHECK(run({"frobnicate"}).code == kExitMalformedInput);
  CHECK(run({"enumerate"}).code == kExitMalformedInput);
  CHECK(run({"enumerate", "--config", (scratch() / "missing.json").string()}).code == kExitMalformedInput);
  nlohmann::json bad = small_config();
  bad["unknown"] = 1;
  CHECK(run({"enumerate", "--config", write_config("bad.json", bad)}).code == kExitMalformedInput);
  const std::string ok = write_config("ok.json", small_config());
  CHECK(run({"enumerate", "--config", ok, "--set", "depth"}).code == kExitMalformedInput);
  CHECK(run({"complex", "--config", ok, "--which", "nope"}).code == kExitMalformedInput);
  CHECK(run({"--version"}).out == std::string(kToolVersion) + "\n");
}

TEST_CASE("pipeline through files, hash checks and determinism") {
  const std::string cfg = write_config("small.json", small_config());
  const fs::path inv = scratch() / "inv.json", tg = scratch() / "tg.json", dot = scratch() / "tg.dot";
  Run r = run({"enumerate", "--config", cfg, "--out", inv.string(), "--verify"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  const auto invj = nlohmann::json::parse(slurp(inv));
  CHECK(invj["result"]["verification"]["issues"].empty());

  r = run({"complex", "--config", cfg, "--inventory", inv.string(), "--out", tg.string(), "--dot", dot.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(slurp(dot).rfind("graph", 0) == 0);
  r = run({"connectivity", "--complex", tg.string(), "--config", cfg});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["result"]["connected"] == true);

  const std::string other = write_config("other.json", [] {
    auto j = small_config();
    j["seed"] = 9;
    return j;
  }());
  CHECK(run({"complex", "--config", other, "--inventory", inv.string()}).code == kExitHashMismatch);
  CHECK(run({"connectivity", "--complex", tg.string(), "--config", other}).code == kExitHashMismatch);

  for (const std::string cmd : {"enumerate", "complex", "encoding", "props"}) {
    const Run a = run({cmd, "--config", cfg, "--jobs", "1"});
    const Run b = run({cmd, "--config", cfg, "--jobs", "3"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"command\": \"" + cmd + "\"") != std::string::npos);
  }
}

TEST_CASE("config outputs map redirects reports") {
  auto j = small_config();
  const fs::path target = scratch() / "surface_report.json";
  j["outputs"] = {{"surface", target.string()}};
  fs::remove(target);
  const Run r = run({"surface", "--config", write_config("outputs.json", j)});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(slurp(target))["result"]["genus"] == 4);
}
