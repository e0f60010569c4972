#include "torelli/inventory.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <unordered_map>

#include "torelli/twist.hpp"

namespace torelli {

nlohmann::json Provenance::to_json() const {
  return {{"num_seeds", num_seeds},
          {"num_generators", num_generators},
          {"depth", depth},
          {"weight_cap", weight_cap},
          {"seed", seed},
          {"configurations", configurations},
          {"exhaustive", exhaustive},
          {"parallel_merged", parallel_merged},
          {"completion_curves", completion_curves}};
}

Provenance Provenance::from_json(const nlohmann::json& j) {
  Provenance p;
  p.num_seeds = j.at("num_seeds").get<int>();
  p.num_generators = j.at("num_generators").get<int>();
  p.depth = j.at("depth").get<int>();
  p.weight_cap = j.at("weight_cap").get<int>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.configurations = j.at("configurations").get<std::size_t>();
  p.exhaustive = j.at("exhaustive").get<bool>();
  p.parallel_merged = j.at("parallel_merged").get<int>();
  p.completion_curves = j.value("completion_curves", 0);
  return p;
}

InventoryCurve describe_curve(const NormalCurve& c, int depth) {
  InventoryCurve ic;
  ic.curve = c;
  ic.homology = homology_class(c);
  ic.separating = std::all_of(ic.homology.begin(), ic.homology.end(),
                              [](std::int64_t x) { return x == 0; });
  ic.separating_genus = ic.separating ? separating_genus(c).first : 0;
  ic.depth = depth;
  return ic;
}

namespace {

bool same_line(const HomologyVector& a, const HomologyVector& b) {
  if (a == b) return true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != -b[i]) return false;
  }
  return true;
}

bool curves_disjoint(const InventoryCurve& a, const InventoryCurve& b) {
  if (!a.separating && !b.separating && symplectic_pairing(a.homology, b.homology) != 0) {
    return false;
  }
  return disjoint(a.curve, b.curve);
}

}  // namespace

CurveInventory::CurveInventory(SurfacePtr surface,
                               std::vector<std::pair<NormalCurve, int>> curves,
                               Provenance provenance, int jobs)
    : surface_(std::move(surface)), provenance_(provenance) {
  std::sort(curves.begin(), curves.end(), [](const auto& x, const auto& y) {
    int wx = x.first.total_weight(), wy = y.first.total_weight();
    if (wx != wy) return wx < wy;
    return x.first < y.first;
  });
  curves.erase(std::unique(curves.begin(), curves.end(),
                           [](const auto& x, const auto& y) { return x.first == y.first; }),
               curves.end());
  curves_.resize(curves.size());
  parallel_for(curves.size(), jobs,
               [&](std::size_t i) { curves_[i] = describe_curve(curves[i].first, curves[i].second); });
  compute_disjointness(jobs);

  // Merge classes that coincide in the closed surface.
  const int n = static_cast<int>(curves_.size());
  std::vector<std::vector<int>> parallel_to(n);
  parallel_for(n, jobs, [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = i + 1; j < n; ++j) {
      if (!disjoint_[i].test(j)) continue;
      const auto& a = curves_[i];
      const auto& b = curves_[j];
      if (a.separating != b.separating) continue;
      if (a.separating ? a.separating_genus != b.separating_genus
                       : !same_line(a.homology, b.homology)) {
        continue;
      }
      if (cut_components({a.curve, b.curve}).has_annulus()) parallel_to[i].push_back(j);
    }
  });
  DisjointSets classes(n);
  for (int i = 0; i < n; ++i) {
    for (int j : parallel_to[i]) classes.unite(i, j);
  }
  std::vector<int> keep;
  std::vector<int> class_of(n, -1);
  std::vector<int> rep_min(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = classes.find(i);
    if (rep_min[r] < 0) {
      rep_min[r] = static_cast<int>(keep.size());
      keep.push_back(i);
    } else {
      auto& rep = curves_[keep[rep_min[r]]];
      rep.depth = std::min(rep.depth, curves_[i].depth);
      rep.copies.push_back(curves_[i].curve);
    }
    class_of[i] = rep_min[r];
  }
  provenance_.parallel_merged += n - static_cast<int>(keep.size());
  if (static_cast<int>(keep.size()) != n) {
    std::vector<InventoryCurve> kept;
    for (int i : keep) kept.push_back(curves_[i]);
    std::vector<BitRow> rows(keep.size(), BitRow(keep.size()));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (class_of[i] != class_of[j] && disjoint_[i].test(j)) rows[class_of[i]].set(class_of[j]);
      }
    }
    curves_ = std::move(kept);
    disjoint_ = std::move(rows);
  }
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    index_[curves_[i].curve.weights()] = static_cast<int>(i);
    for (const auto& c : curves_[i].copies) index_[c.weights()] = static_cast<int>(i);
  }
}

void CurveInventory::compute_disjointness(int jobs) {
  const std::size_t n = curves_.size();
  disjoint_.assign(n, BitRow(n));
  parallel_for(n, jobs, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (curves_disjoint(curves_[i], curves_[j])) disjoint_[i].set(j);
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (disjoint_[i].test(j)) disjoint_[j].set(i);
    }
  }
}

int CurveInventory::index_of(const NormalCurve& c) const {
  auto it = index_.find(c.weights());
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::string> CurveInventory::verify(int jobs) const {
  const std::size_t n = curves_.size();
  std::vector<std::vector<std::string>> issues(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    const auto& c = curves_[i];
    InventoryCurve fresh = describe_curve(c.curve, c.depth);
    auto name = "curve " + std::to_string(i);
    if (fresh.homology != c.homology) issues[i].push_back(name + ": homology mismatch");
    if (fresh.separating != c.separating) issues[i].push_back(name + ": separating flag mismatch");
    if (fresh.separating_genus != c.separating_genus) {
      issues[i].push_back(name + ": separating genus mismatch");
    }
    if (is_separating(c.curve) != (cut_components({c.curve}).count() == 2)) {
      issues[i].push_back(name + ": separation disagrees with cut");
    }
    for (const auto& copy : c.copies) {
      if (!torelli::disjoint(c.curve, copy) || !cut_components({c.curve, copy}).has_annulus()) {
        issues[i].push_back(name + ": copy is not parallel");
      }
    }
    std::vector<NormalCurve> mine{c.curve};
    mine.insert(mine.end(), c.copies.begin(), c.copies.end());
    for (std::size_t j = i + 1; j < n; ++j) {
      if (c.curve == curves_[j].curve) issues[i].push_back(name + ": duplicate weights");
      std::vector<NormalCurve> theirs{curves_[j].curve};
      theirs.insert(theirs.end(), curves_[j].copies.begin(), curves_[j].copies.end());
      bool d = false;
      for (const auto& x : mine) {
        for (const auto& y : theirs) {
          if (!torelli::disjoint(x, y)) continue;
          d = true;
          if (geometric_intersection(x, y) != 0) {
            issues[i].push_back(name + ": disjoint pair with nonzero intersection");
          }
          if (cut_components({x, y}).has_annulus()) issues[i].push_back(name + ": parallel copy kept");
        }
      }
      if (d != disjoint_[i].test(j)) {
        issues[i].push_back(name + ": disjointness mismatch with " + std::to_string(j));
      }
    }
  });
  std::vector<std::string> out;
  for (auto& v : issues) out.insert(out.end(), v.begin(), v.end());
  return out;
}

nlohmann::json CurveInventory::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : curves_) {
    nlohmann::json rec = c.curve.to_json();
    rec["homology"] = c.homology;
    rec["separating"] = c.separating;
    rec["separating_genus"] = c.separating_genus;
    rec["depth"] = c.depth;
    if (!c.copies.empty()) {
      nlohmann::json copies = nlohmann::json::array();
      for (const auto& x : c.copies) copies.push_back(x.weights());
      rec["copies"] = copies;
    }
    list.push_back(std::move(rec));
  }
  return {{"schema", "torelli.inventory"},
          {"schema_version", 1},
          {"genus", genus()},
          {"triangulation", surface_->hash_hex()},
          {"provenance", provenance_.to_json()},
          {"curves", list}};
}

CurveInventory CurveInventory::from_json(SurfacePtr surface, const nlohmann::json& j, int jobs) {
  if (j.value("schema", "") != "torelli.inventory" || j.value("schema_version", 0) != 1) {
    throw CurveError("unsupported inventory schema");
  }
  if (j.at("triangulation").get<std::string>() != surface->hash_hex()) {
    throw CurveError("inventory belongs to a different triangulation");
  }
  std::vector<std::pair<NormalCurve, int>> curves;
  for (const auto& rec : j.at("curves")) {
    const int depth = rec.value("depth", 0);
    curves.emplace_back(NormalCurve::from_json(surface, rec), depth);
    for (const auto& w : rec.value("copies", nlohmann::json::array())) {
      curves.emplace_back(NormalCurve::from_weights(surface, w.get<std::vector<int>>()), depth);
    }
  }
  Provenance p = Provenance::from_json(j.at("provenance"));
  p.parallel_merged = 0;  // recounted by the constructor
  return CurveInventory(std::move(surface), std::move(curves), p, jobs);
}

namespace {

struct Configuration {
  std::vector<NormalCurve> seeds;
  std::vector<NormalCurve> generators;
  int last_letter = -1;  // 2 * generator + (exponent < 0)
};

struct StateKey {
  std::uint64_t a, b;
  bool operator==(const StateKey& o) const { return a == o.a && b == o.b; }
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const { return k.a ^ (k.b * 0x9e3779b97f4a7c15ULL); }
};

StateKey key_of(const std::vector<NormalCurve>& seeds) {
  std::uint64_t a = 0xcbf29ce484222325ULL, b = 0x84222325cbf29ce4ULL;
  for (const auto& c : seeds) {
    a = fnv1a_ints(c.weights(), a);
    b = fnv1a_ints(c.weights(), b ^ 0x5bd1e995ULL);
    b = (b << 7) | (b >> 57);
  }
  return {a, b};
}

}  // namespace

CurveInventory enumerate_curves(const SurfacePtr& surface, const EnumerationParams& params) {
  if (params.depth < 0 || params.weight_cap <= 0) throw CurveError("invalid enumeration budget");
  const int k = static_cast<int>(params.generators.size());
  Provenance prov;
  prov.num_seeds = static_cast<int>(params.seeds.size());
  prov.num_generators = k;
  prov.depth = params.depth;
  prov.weight_cap = params.weight_cap;
  prov.seed = params.seed;

  std::map<std::vector<int>, std::pair<NormalCurve, int>> found;
  auto record = [&](const std::vector<NormalCurve>& seeds, int depth) {
    for (const auto& c : seeds) {
      auto it = found.find(c.weights());
      if (it == found.end()) {
        found.emplace(c.weights(), std::make_pair(c, depth));
      } else {
        it->second.second = std::min(it->second.second, depth);
      }
    }
  };

  Configuration root{params.seeds, params.generators, -1};
  for (const auto& c : root.seeds) {
    if (c.total_weight() > params.weight_cap) throw CurveError("seed exceeds the weight cap");
  }
  std::unordered_map<StateKey, int, StateKeyHash> seen;
  seen[key_of(root.seeds)] = 0;
  prov.configurations = 1;
  record(root.seeds, 0);
  bool stop = false;

  std::function<void(const Configuration&, int)> expand = [&](const Configuration& node,
                                                              int depth) {
    if (depth >= params.depth || stop) return;
    std::vector<int> letters;
    for (int letter = 0; letter < 2 * k; ++letter) {
      // The inverse of the last letter leads back to the parent.
      if (node.last_letter >= 0 && (node.last_letter ^ 1) == letter) continue;
      letters.push_back(letter);
    }
    // The random seed only decides the order, which matters under truncation.
    std::mt19937_64 rng(params.seed ^ key_of(node.seeds).a);
    for (std::size_t i = letters.size(); i > 1; --i) {
      std::size_t j = rng() % i;
      std::swap(letters[i - 1], letters[j]);
    }
    std::vector<std::optional<Configuration>> children(letters.size());
    parallel_for(letters.size(), params.jobs, [&](std::size_t idx) {
      const int letter = letters[idx];
      const NormalCurve& t = node.generators[letter / 2];
      const int n = letter % 2 == 0 ? 1 : -1;
      Configuration child;
      child.last_letter = letter;
      for (const auto& c : node.seeds) {
        child.seeds.push_back(dehn_twist(t, n, c));
        if (child.seeds.back().total_weight() > params.weight_cap) return;
      }
      for (const auto& c : node.generators) child.generators.push_back(dehn_twist(t, n, c));
      children[idx] = std::move(child);
    });
    for (auto& child : children) {
      if (!child || stop) continue;
      StateKey key = key_of(child->seeds);
      auto it = seen.find(key);
      if (it != seen.end() && it->second <= depth + 1) continue;
      if (it == seen.end()) {
        if (prov.configurations >= params.max_configurations) {
          prov.exhaustive = false;
          stop = true;
          return;
        }
        ++prov.configurations;
      }
      seen[key] = depth + 1;
      record(child->seeds, depth + 1);
      expand(*child, depth + 1);
    }
  };
  expand(root, 0);

  std::vector<std::pair<NormalCurve, int>> curves;
  for (auto& [w, entry] : found) curves.push_back(entry);
  return CurveInventory(surface, std::move(curves), prov, params.jobs);
}

}  // namespace torelli
