#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "torelli/cli.hpp"
#include "torelli/complex.hpp"
#include "torelli/config.hpp"
#include "torelli/encoding.hpp"
#include "torelli/twist_algebra.hpp"

using namespace torelli;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit, const std::function<Outcome()>& fn) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = seconds_since(t0);
  if (limit > 0 && dt > limit) {
    o.pass = false;
    o.detail += "; over time limit";
  }
  if (!o.pass) ++failures;
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << " #" << id << " " << name << ": " << o.detail << " ["
       << std::fixed << std::setprecision(1) << dt << " s]";
  std::cout << line.str() << std::endl;
}

/// Inventories of the standard configs, built on first use.
class Inventories {
 public:
  const CurveInventory& get(int g) {
    auto it = cache_.find(g);
    if (it == cache_.end()) {
      const ExperimentConfig c = standard_config(g);
      const auto t0 = Clock::now();
      it = cache_.emplace(g, build_inventory(c, config_surface(c), 1)).first;
      build_seconds_[g] = seconds_since(t0);
    }
    return it->second;
  }
  double build_seconds(int g) {
    get(g);
    return build_seconds_[g];
  }
  const TorelliComplex& tg(int g) {
    auto it = tg_.find(g);
    if (it == tg_.end()) it = tg_.emplace(g, std::make_unique<TorelliComplex>(get(g))).first;
    return *it->second;
  }
  const MoveGraph& moves(int g) {
    auto it = mg_.find(g);
    if (it == mg_.end()) it = mg_.emplace(g, std::make_unique<MoveGraph>(tg(g))).first;
    return *it->second;
  }

 private:
  std::map<int, CurveInventory> cache_;
  std::map<int, double> build_seconds_;
  std::map<int, std::unique_ptr<TorelliComplex>> tg_;
  std::map<int, std::unique_ptr<MoveGraph>> mg_;
};

std::string str(const nlohmann::json& j) { return j.dump(); }

bool is_identity(const IntMatrix& m) { return m == identity_matrix(m.size()); }

HomologyVector negate(HomologyVector v) {
  for (auto& x : v) x = -x;
  return v;
}

EncodingParams standard_encoding(int g) {
  const ExperimentConfig c = standard_config(g);
  EncodingParams p;
  p.soundness_samples = c.soundness_samples;
  p.completeness_samples = c.completeness_samples;
  p.separation_samples = c.separation_samples;
  p.budget = c.bfs_budget;
  p.escalations = c.escalations;
  p.seed = c.seed;
  return p;
}

PropsParams standard_props(int g) {
  const ExperimentConfig c = standard_config(g);
  PropsParams p;
  p.power_samples = c.power_samples;
  p.non_marked_samples = c.non_marked_samples;
  p.scan_systems = c.scan_systems;
  p.seed = c.seed;
  return p;
}

std::size_t mixed_decode_components(const MoveGraph& mg) {
  const auto comp = mg.components();
  std::map<int, std::set<int>> decodes;
  for (std::size_t i = 0; i < mg.size(); ++i) decodes[comp[i]].insert(mg.decode_node(i));
  std::size_t mixed = 0;
  for (const auto& [c, d] : decodes) mixed += d.size() > 1;
  return mixed;
}

std::string run_cli_capture(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

}  // namespace

int main() {
  Inventories inv;
  std::map<int, nlohmann::json> encoding, props;
  auto encoding_at = [&](int g) -> const nlohmann::json& {
    if (!encoding.count(g)) encoding[g] = encoding_experiment(inv.moves(g), standard_encoding(g));
    return encoding[g];
  };
  auto props_at = [&](int g) -> const nlohmann::json& {
    if (!props.count(g)) props[g] = props_report(inv.tg(g), standard_props(g));
    return props[g];
  };

  report(1, "surface substrate", 1.0, [] {
    std::ostringstream d;
    bool ok = true;
    for (int g = 2; g <= 5; ++g) {
      const Triangulation t = build_closed_surface(g);
      const HomologyBasis b = homology_basis(t);
      bool skew = true;
      for (std::size_t i = 0; i < b.pairing.size(); ++i) {
        for (std::size_t j = 0; j < b.pairing.size(); ++j) skew = skew && b.pairing[i][j] == -b.pairing[j][i];
      }
      const bool good = validate(t).empty() && t.num_vertices() == 1 && t.num_edges() == 6 * g - 3 &&
                        t.num_triangles() == 4 * g - 2 && t.euler_characteristic() == 2 - 2 * g &&
                        skew && determinant(b.pairing) == 1 && b.pairing == standard_symplectic(g);
      ok = ok && good;
      d << "g=" << g << " V=" << t.num_vertices() << " E=" << t.num_edges() << " F=" << t.num_triangles()
        << " chi=" << t.euler_characteristic() << " det=" << determinant(b.pairing) << "; ";
    }
    return Outcome{ok, d.str()};
  });

  report(2, "twist intersection oracle", 60.0, [] {
    std::size_t triples = 0, exact = 0, crossing = 0;
    for (int g : {2, 3}) {
      ExperimentConfig c = standard_config(g);
      c.depth = 2;
      const CurveInventory small = build_inventory(c, config_surface(c), 1);
      std::vector<int> light;
      for (std::size_t i = 0; i < small.size(); ++i) {
        if (small[i].curve.total_weight() <= 40) light.push_back(static_cast<int>(i));
      }
      std::mt19937_64 rng(20 + g);
      std::size_t done = 0;
      while (done < 150) {
        const auto& t = small[light[rng() % light.size()]].curve;
        const auto& x = small[light[rng() % light.size()]].curve;
        const int i = geometric_intersection(t, x);
        if (i == 0 && rng() % 4 != 0) continue;
        const int n = static_cast<int>(rng() % 3 + 1) * (rng() % 2 ? 1 : -1);
        ++done;
        ++triples;
        crossing += i > 0;
        exact += geometric_intersection(dehn_twist(t, n, x), x) == std::abs(n) * i * i;
      }
    }
    return Outcome{triples >= 200 && exact == triples,
                   std::to_string(exact) + "/" + std::to_string(triples) + " exact (" +
                       std::to_string(crossing) + " with i(t,c) > 0)"};
  });

  report(3, "Torelli membership", 0, [&] {
    const CurveInventory& I = inv.get(3);
    std::size_t sep = 0, sep_ok = 0, nonsep = 0, nonsep_ok = 0, curve_checks = 0, curve_ok = 0;
    std::mt19937_64 rng(3);
    for (const auto& c : I.curves()) {
      const IntMatrix m = homology_action(MappingClassWord({{c.curve, 1}}));
      if (c.separating) {
        ++sep;
        sep_ok += is_identity(m);
      } else {
        ++nonsep;
        nonsep_ok += !is_identity(m) && is_symplectic(m) && m == transvection(c.homology, 1);
      }
      if (c.curve.total_weight() <= 30) {
        const auto& x = I[rng() % I.size()].curve;
        if (x.total_weight() <= 30) {
          ++curve_checks;
          const HomologyVector image = homology_class(dehn_twist(c.curve, 1, x));
          const HomologyVector expect = apply_matrix(m, homology_class(x));
          curve_ok += image == expect || image == negate(expect);
        }
      }
    }
    const auto pairs = bounding_pairs(I);
    std::size_t bp_ok = 0;
    for (auto [a, b] : pairs) bp_ok += is_identity(homology_action(bp_map(I[a].curve, I[b].curve)));
    const bool ok = sep_ok == sep && nonsep_ok == nonsep && bp_ok == pairs.size() && curve_ok == curve_checks;
    return Outcome{ok, "g=3 L=4: separating " + std::to_string(sep_ok) + "/" + std::to_string(sep) +
                           " identity, bounding pairs " + std::to_string(bp_ok) + "/" +
                           std::to_string(pairs.size()) + " identity, nonseparating " +
                           std::to_string(nonsep_ok) + "/" + std::to_string(nonsep) +
                           " transvections, curve-level cross-check " + std::to_string(curve_ok) + "/" +
                           std::to_string(curve_checks)};
  });

  report(4, "genus-2 degeneration", 0, [&] {
    const CurveInventory& I = inv.get(2);
    const SeparatingComplex tgs = build_tgs(I, false);
    return Outcome{tgs.curves.size() >= 50 && tgs.graph.num_edges() == 0,
                   std::to_string(tgs.curves.size()) + " separating curves, " +
                       std::to_string(tgs.graph.num_edges()) + " edges"};
  });

  report(5, "connectedness at genus 3", 600.0, [&] {
    const auto t0 = Clock::now();
    const CurveInventory& I = inv.get(3);
    const TorelliComplex& tg = inv.tg(3);
    const SeparatingComplex tgs = build_tgs(I, false), g1 = build_tgs(I, true);
    const auto a = component_report_json(tg.graph()), b = component_report_json(tgs.graph),
               c = component_report_json(g1.graph);
    const double build = inv.build_seconds(3);
    const bool ok = a["num_components"] == 1 && b["num_components"] == 1 && c["num_components"] == 1 &&
                    tg.vertices().size() > 0 && tgs.curves.size() > 0 && g1.curves.size() > 0 &&
                    build + seconds_since(t0) < 600.0;
    auto line = [](const char* name, const nlohmann::json& r) {
      return std::string(name) + " V=" + str(r["num_vertices"]) + " E=" + str(r["num_edges"]) +
             " components=" + str(r["num_components"]) + " diameter=" + str(r["diameter_of_largest"]);
    };
    std::ostringstream t;
    t << std::fixed << std::setprecision(1) << build;
    return Outcome{ok, "inventory " + std::to_string(I.size()) + " curves (" +
                           std::to_string(I.provenance().completion_curves) + " from link completion, built in " +
                           t.str() + " s); " +
                           line("TG", a) + "; " + line("TGS", b) + "; " + line("genus-one", c)};
  });

  report(6, "move soundness", 0, [&] {
    const auto& e3 = encoding_at(3);
    const auto& e5 = encoding_at(5);
    const auto sampled = e3["soundness"]["sampled"].get<std::size_t>() + e5["soundness"]["sampled"].get<std::size_t>();
    const bool ok = sampled >= 10000 && e3["soundness"]["preserved"] == e3["soundness"]["sampled"] &&
                    e5["soundness"]["preserved"] == e5["soundness"]["sampled"] &&
                    e5["soundness"]["exhaustive_preserved"] == e5["soundness"]["exhaustive_moves"];
    return Outcome{ok, "g=3: " + str(e3["num_marked_triangles"]) + " marked triangles, " +
                           str(e3["soundness"]["sampled"]) + " moves; g=5: " + str(e5["soundness"]["preserved"]) +
                           "/" + str(e5["soundness"]["sampled"]) + " sampled and " +
                           str(e5["soundness"]["exhaustive_preserved"]) + "/" +
                           str(e5["soundness"]["exhaustive_moves"]) + " exhaustive moves preserve decode"};
  });

  report(7, "no paths between different decodes", 0, [&] {
    std::ostringstream d;
    bool ok = true;
    for (int g : {3, 4, 5}) {
      const MoveGraph& mg = inv.moves(g);
      const std::size_t mixed = mixed_decode_components(mg);
      ok = ok && mixed == 0;
      d << "g=" << g << ": " << mg.size() << " admissible pairs, " << mixed << " components mixing decodes; ";
    }
    return Outcome{ok, d.str()};
  });

  report(8, "completeness at genus 5", 1800.0, [&] {
    const auto& c = encoding_at(5)["completeness"];
    bool attributed = true;
    for (const auto& f : c["failures"]) {
      const std::string cause = f.value("cause", "");
      attributed = attributed && (cause == "inventory_truncation" || cause == "budget_truncation");
    }
    const double rate = c["rate"].get<double>();
    return Outcome{rate >= 0.95 && attributed && c["failures"].size() == c["sampled"].get<std::size_t>() -
                                                                            c["connected"].get<std::size_t>(),
                   str(c["connected"]) + "/" + str(c["sampled"]) + " connected (rate " + str(c["rate"]) +
                       "), inventory truncation " + str(c["exhausted_frontier"]) + ", budget truncation " +
                       str(c["budget_cut"])};
  });

  report(9, "marked-triangle rank criterion", 0, [&] {
    const auto& p4 = props_at(4)["P7"];
    PropsParams q = standard_props(5);
    q.scan_systems = false;
    const auto p5 = props_report(inv.tg(5), q)["P7"];
    const bool ok = p4["triangle_checks"].get<std::size_t>() > 0 && p4["triangle_passes"] == p4["triangle_checks"] &&
                    p5["triangle_passes"] == p5["triangle_checks"] &&
                    p5["non_marked_checks"].get<std::size_t>() > 0 &&
                    p5["non_marked_violations"] == p5["non_marked_checks"];
    return Outcome{ok, "g=4: " + str(p4["triangle_passes"]) + "/" + str(p4["triangle_checks"]) +
                           " triangle power triples pass; g=5: " + str(p5["triangle_passes"]) + "/" +
                           str(p5["triangle_checks"]) + " pass, " + str(p5["non_marked_violations"]) + "/" +
                           str(p5["non_marked_checks"]) + " non-marked triples violate"};
  });

  report(10, "bounding-pair criterion at genus 4", 0, [&] {
    const auto& p = props_at(4)["P6"];
    const bool ok = p["bounding_pairs_in_triangles"].get<std::size_t>() > 0 &&
                    p["bounding_pairs_in_triangles_with_witness"] == p["bounding_pairs_in_triangles"] &&
                    p["separating"].get<std::size_t>() > 0 && p["separating_with_witness"] == 0;
    return Outcome{ok, str(p["bounding_pairs_in_triangles_with_witness"]) + "/" +
                           str(p["bounding_pairs_in_triangles"]) + " triangle bounding pairs have witnesses, " +
                           str(p["separating_with_witness"]) + "/" + str(p["separating"]) +
                           " separating twists do; off-triangle bounding pairs " +
                           str(p["bounding_pairs_off_triangles_with_witness"]) + "/" +
                           str(p["bounding_pairs_off_triangles"])};
  });

  report(11, "maximal abelian rank", 600.0, [&] {
    const AbelianRankReport r3 = max_abelian_rank(inv.get(3));
    const auto& p4 = props_at(4)["P5.2"];
    const bool ok = r3.max_rank == 3 && p4["max_rank"] == 5 && p4["systems_above_bound"] == 0;
    return Outcome{ok, "g=3: max rank " + std::to_string(r3.max_rank) + " over " + std::to_string(r3.systems) +
                           " maximal systems; g=4: max rank " + str(p4["max_rank"]) + " over " +
                           str(p4["systems"]) + " systems, " + str(p4["systems_above_bound"]) + " above 2g-3"};
  });

  report(12, "top simplex size at genus 3", 0, [&] {
    const CurveInventory& I = inv.get(3);
    std::size_t largest = 0, systems = 0;
    std::vector<int> top;
    systems = for_each_maximal_system(I, {}, [&](const std::vector<int>& s) {
      if (s.size() > largest) {
        largest = s.size();
        top = s;
      }
    });
    std::vector<NormalCurve> cs;
    for (int c : top) cs.push_back(I[c].curve);
    const std::size_t pieces = cs.empty() ? 0 : cut_components(cs).count();
    return Outcome{largest == 6 && pieces == 4,
                   std::to_string(systems) + " maximal systems, largest has " + std::to_string(largest) +
                       " curves cutting the surface into " + std::to_string(pieces) + " pieces"};
  });

  report(13, "determinism across --jobs", 0, [] {
    const fs::path dir = fs::temp_directory_path() / "torelli_acceptance";
    fs::create_directories(dir);
    std::size_t runs = 0, identical = 0;
    std::vector<std::string> mismatched;
    for (auto [g, depth] : {std::pair{4, 1}, std::pair{3, 2}}) {
      ExperimentConfig c = standard_config(g);
      c.depth = depth;
      c.soundness_samples = 2000;
      c.completeness_samples = 50;
      c.separation_samples = 50;
      const std::string tag = "g" + std::to_string(g) + "L" + std::to_string(depth);
      const fs::path cfg = dir / (tag + ".json");
      std::ofstream(cfg) << c.to_json().dump(2);
      const std::vector<std::vector<std::string>> commands = {
          {"surface"},
          {"enumerate"},
          {"complex", "--which", "tg"},
          {"complex", "--which", "tgs"},
          {"complex", "--which", "tgs-genus1"},
          {"encoding"},
          {"props"}};
      for (const auto& cmd : commands) {
        std::vector<std::string> outputs;
        for (const char* jobs : {"1", "1", "3"}) {
          std::vector<std::string> args = {"torelli", "--config", cfg.string(), "--jobs", jobs};
          args.insert(args.end(), cmd.begin(), cmd.end());
          int code = 0;
          outputs.push_back(run_cli_capture(args, code));
          if (code != kExitOk) outputs.back() += "exit " + std::to_string(code);
        }
        ++runs;
        if (outputs[0] == outputs[1] && outputs[1] == outputs[2] && !outputs[0].empty()) {
          ++identical;
        } else {
          mismatched.push_back(tag + " " + cmd.front());
        }
      }
      std::vector<std::string> conn;
      for (const char* jobs : {"1", "3"}) {
        const fs::path file = dir / (tag + "_tg_" + jobs + ".json");
        int code = 0;
        run_cli_capture({"torelli", "--config", cfg.string(), "--jobs", jobs, "--out", file.string(), "complex"},
                        code);
        conn.push_back(run_cli_capture({"torelli", "--jobs", jobs, "connectivity", "--complex", file.string()},
                                       code) +
                       std::to_string(code));
      }
      ++runs;
      if (conn[0] == conn[1]) {
        ++identical;
      } else {
        mismatched.push_back(tag + " connectivity");
      }
    }
    std::string detail = std::to_string(identical) + "/" + std::to_string(runs) +
                         " commands byte-identical over --jobs 1, 1, 3";
    for (const auto& m : mismatched) detail += "; differs: " + m;
    return Outcome{identical == runs, detail};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
