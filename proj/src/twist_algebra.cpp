#include "torelli/twist_algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace torelli {

DisjointSystem make_system(const CurveInventory& inv, std::vector<int> classes) {
  const int n = static_cast<int>(inv.size());
  for (std::size_t x = 0; x < classes.size(); ++x) {
    if (classes[x] < 0 || classes[x] >= n) throw std::invalid_argument("class index out of range");
    for (std::size_t y = 0; y < x; ++y) {
      if (classes[x] == classes[y]) throw std::invalid_argument("repeated class in system");
      if (!inv.disjoint(classes[x], classes[y])) throw std::invalid_argument("classes intersect");
    }
  }
  return {std::move(classes)};
}

std::vector<int> SimpleTwistVector::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vector.size(); ++i) {
    if (vector[i] != 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> support_curves(const SimpleTwistVector& v) {
  std::vector<int> out;
  for (int i : v.support()) out.push_back(v.system.classes[i]);
  std::sort(out.begin(), out.end());
  return out;
}

SimpleTwistVector separating_twist(const CurveInventory& inv, const DisjointSystem& s, int i,
                                   std::int64_t n) {
  if (n == 0) throw std::invalid_argument("zero power");
  if (i < 0 || i >= static_cast<int>(s.classes.size())) throw std::invalid_argument("index out of range");
  if (!inv[s.classes[i]].separating) throw std::invalid_argument("class is not separating");
  SimpleTwistVector v{s, std::vector<std::int64_t>(s.classes.size(), 0)};
  v.vector[i] = n;
  return v;
}

SimpleTwistVector bounding_pair_twist(const CurveInventory& inv, const DisjointSystem& s, int i,
                                      int j, std::int64_t n) {
  const int m = static_cast<int>(s.classes.size());
  if (n == 0) throw std::invalid_argument("zero power");
  if (i < 0 || j < 0 || i >= m || j >= m || i == j) throw std::invalid_argument("index out of range");
  if (!is_bounding_pair(inv[s.classes[i]].curve, inv[s.classes[j]].curve)) {
    throw std::invalid_argument("classes are not a bounding pair");
  }
  SimpleTwistVector v{s, std::vector<std::int64_t>(m, 0)};
  v.vector[i] = n;
  v.vector[j] = -n;
  return v;
}

std::vector<std::int64_t> smith_invariants(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::int64_t> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the remaining block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pr == rows || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) return out;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    out.push_back(std::llabs(a[t][t]));
  }
  return out;
}

int lattice_rank(const IntMatrix& rows) { return static_cast<int>(smith_invariants(rows).size()); }

int subgroup_rank(const std::vector<SimpleTwistVector>& vs) {
  IntMatrix m;
  for (const auto& v : vs) {
    if (!(v.system == vs.front().system)) throw std::invalid_argument("vectors on different systems");
    m.push_back(v.vector);
  }
  return lattice_rank(m);
}

bool rank_conditions(const std::array<SimpleTwistVector, 3>& t) {
  if (subgroup_rank({t[0], t[1], t[2]}) != 2) return false;
  for (int i = 0; i < 3; ++i) {
    if (subgroup_rank({t[i], t[(i + 1) % 3]}) != 2) return false;
  }
  return true;
}

std::array<SimpleTwistVector, 3> marked_triangle_twists(const TorelliComplex& c, int triangle,
                                                        const std::array<std::int64_t, 3>& powers) {
  const auto& curves = c.triangle_curves().at(triangle);
  const auto& tri = c.marked_triangles().at(triangle);
  DisjointSystem s = make_system(c.inventory(), {curves[0], curves[1], curves[2]});
  std::array<SimpleTwistVector, 3> out;
  for (int k = 0; k < 3; ++k) {
    const TGVertex& v = c.vertices()[tri[k]];
    const int i = static_cast<int>(std::find(curves.begin(), curves.end(), v.a) - curves.begin());
    const int j = static_cast<int>(std::find(curves.begin(), curves.end(), v.b) - curves.begin());
    out[k] = SimpleTwistVector{s, std::vector<std::int64_t>(3, 0)};
    out[k].vector[i] = powers[k];
    out[k].vector[j] = -powers[k];
  }
  return out;
}

bool verify_marked_triangle_rank(const TorelliComplex& c, int triangle,
                                 const std::array<std::int64_t, 3>& powers) {
  if (!detect_marked_triangle(c.inventory(), c.vertices()[c.marked_triangles()[triangle][0]],
                              c.vertices()[c.marked_triangles()[triangle][1]],
                              c.vertices()[c.marked_triangles()[triangle][2]])) {
    return false;
  }
  return rank_conditions(marked_triangle_twists(c, triangle, powers));
}

namespace {

/// Bounding-pair lookup over inventory indices.
class PairTable {
 public:
  explicit PairTable(const CurveInventory& inv, int jobs = 1) {
    for (auto [a, b] : bounding_pairs(inv, jobs)) pairs_.insert({a, b});
  }
  bool contains(int a, int b) const { return pairs_.count({std::min(a, b), std::max(a, b)}) > 0; }

 private:
  std::set<std::pair<int, int>> pairs_;
};

std::vector<SimpleTwistVector> simple_twists(const CurveInventory& inv, const std::vector<int>& system,
                                             const PairTable& pairs) {
  DisjointSystem s{system};
  const int m = static_cast<int>(system.size());
  std::vector<SimpleTwistVector> out;
  for (int i = 0; i < m; ++i) {
    if (!inv[system[i]].separating) continue;
    SimpleTwistVector v{s, std::vector<std::int64_t>(m, 0)};
    v.vector[i] = 1;
    out.push_back(std::move(v));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (!pairs.contains(system[i], system[j])) continue;
      SimpleTwistVector v{s, std::vector<std::int64_t>(m, 0)};
      v.vector[i] = 1;
      v.vector[j] = -1;
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Re-expresses f over another system containing its support.
SimpleTwistVector reindex(const SimpleTwistVector& f, const std::vector<int>& system) {
  SimpleTwistVector out{DisjointSystem{system}, std::vector<std::int64_t>(system.size(), 0)};
  for (int i : f.support()) {
    const int c = f.system.classes[i];
    const auto pos = std::find(system.begin(), system.end(), c) - system.begin();
    out.vector[pos] = f.vector[i];
  }
  return out;
}

/// Index pair (g, h) into twists completing twists[f] to a rank-2 triple.
std::optional<std::pair<int, int>> witness_in(const std::vector<SimpleTwistVector>& twists,
                                              const SimpleTwistVector& f) {
  const auto fs = f.support();
  const int k = static_cast<int>(twists.size());
  for (int x = 0; x < k; ++x) {
    const auto xs = twists[x].support();
    if (xs == fs) continue;
    for (int y = x + 1; y < k; ++y) {
      const auto ys = twists[y].support();
      if (ys == fs || ys == xs) continue;
      if (subgroup_rank({f, twists[x], twists[y]}) == 2) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

int system_rank(const std::vector<SimpleTwistVector>& twists) {
  if (twists.empty()) return 0;
  IntMatrix m;
  for (const auto& t : twists) m.push_back(t.vector);
  return lattice_rank(m);
}

}  // namespace

std::vector<SimpleTwistVector> simple_twists_on(const CurveInventory& inv, const std::vector<int>& system) {
  make_system(inv, system);
  DisjointSystem s{system};
  const int m = static_cast<int>(system.size());
  std::vector<SimpleTwistVector> out;
  for (int i = 0; i < m; ++i) {
    if (inv[system[i]].separating) out.push_back(separating_twist(inv, s, i));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto& a = inv[system[i]];
      const auto& b = inv[system[j]];
      if (!a.separating && !b.separating && a.homology == b.homology &&
          is_bounding_pair(a.curve, b.curve)) {
        out.push_back(bounding_pair_twist(inv, s, i, j));
      }
    }
  }
  return out;
}

std::optional<std::pair<SimpleTwistVector, SimpleTwistVector>> bp_criterion_search(
    const SimpleTwistVector& f, const CurveInventory& inv) {
  const PairTable pairs(inv);
  std::optional<std::pair<SimpleTwistVector, SimpleTwistVector>> found;
  for_each_maximal_system(inv, support_curves(f), [&](const std::vector<int>& sys) {
    if (found) return;
    const std::vector<int> system = sorted(sys);
    const auto twists = simple_twists(inv, system, pairs);
    const SimpleTwistVector g = reindex(f, system);
    if (auto w = witness_in(twists, g)) found.emplace(twists[w->first], twists[w->second]);
  });
  return found;
}

AbelianRankReport max_abelian_rank(const CurveInventory& inv,
                                   const std::optional<SimpleTwistVector>& must_contain) {
  const PairTable pairs(inv);
  AbelianRankReport r;
  const std::vector<int> base = must_contain ? support_curves(*must_contain) : std::vector<int>{};
  r.systems = for_each_maximal_system(inv, base, [&](const std::vector<int>& sys) {
    const std::vector<int> system = sorted(sys);
    const int rank = system_rank(simple_twists(inv, system, pairs));
    if (r.witness.empty() || rank > r.max_rank || (rank == r.max_rank && system < r.witness)) {
      r.max_rank = rank;
      r.witness = system;
    }
  });
  return r;
}

nlohmann::json props_report(const TorelliComplex& c, const PropsParams& params) {
  const CurveInventory& inv = c.inventory();
  const int g = inv.genus();
  std::mt19937_64 rng(params.seed);
  auto power = [&] {
    const std::int64_t p = static_cast<std::int64_t>(rng() % 3) + 1;
    return (rng() & 1U) ? p : -p;
  };

  // Marked triangles satisfy the rank conditions for sampled powers.
  std::size_t tri_checks = 0, tri_pass = 0;
  for (std::size_t t = 0; t < c.marked_triangles().size(); ++t) {
    for (std::size_t k = 0; k < params.power_samples; ++k) {
      std::array<std::int64_t, 3> p{power(), power(), power()};
      ++tri_checks;
      tri_pass += verify_marked_triangle_rank(c, static_cast<int>(t), p);
    }
  }
  // Pairwise adjacent bounding-pair triples on at least four classes fail them.
  std::vector<int> bp_vertices;
  for (std::size_t v = 0; v < c.vertices().size(); ++v) {
    if (c.vertices()[v].kind == VertexKind::BoundingPair) bp_vertices.push_back(static_cast<int>(v));
  }
  auto bp_neighbours = [&](int v) {
    std::vector<int> out;
    for (int u : c.graph().adj[v]) {
      if (c.vertices()[u].kind == VertexKind::BoundingPair) out.push_back(u);
    }
    return out;
  };
  std::size_t non_checks = 0, non_violate = 0;
  for (std::size_t attempt = 0;
       non_checks < params.non_marked_samples && attempt < 50 * params.non_marked_samples && !bp_vertices.empty();
       ++attempt) {
    const int u = bp_vertices[rng() % bp_vertices.size()];
    const auto nu = bp_neighbours(u);
    if (nu.empty()) continue;
    const int v = nu[rng() % nu.size()];
    std::vector<int> common;
    for (int w : bp_neighbours(v)) {
      if (w != u && c.adjacent(u, w)) common.push_back(w);
    }
    if (common.empty()) continue;
    const int w = common[rng() % common.size()];
    std::vector<int> classes;
    for (int x : {u, v, w}) {
      for (int cv : c.vertices()[x].curves()) classes.push_back(cv);
    }
    classes = sorted(classes);
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (classes.size() < 4) continue;
    DisjointSystem s = make_system(inv, classes);
    std::array<SimpleTwistVector, 3> triple;
    int k = 0;
    for (int x : {u, v, w}) {
      const TGVertex& vx = c.vertices()[x];
      const int i = static_cast<int>(std::find(classes.begin(), classes.end(), vx.a) - classes.begin());
      const int j = static_cast<int>(std::find(classes.begin(), classes.end(), vx.b) - classes.begin());
      triple[k] = SimpleTwistVector{s, std::vector<std::int64_t>(classes.size(), 0)};
      const std::int64_t p = power();
      triple[k].vector[i] = p;
      triple[k].vector[j] = -p;
      ++k;
    }
    ++non_checks;
    non_violate += !rank_conditions(triple);
  }

  const nlohmann::json p7 = {{"marked_triangles", c.marked_triangles().size()},
                             {"triangle_checks", tri_checks},
                             {"triangle_passes", tri_pass},
                             {"non_marked_checks", non_checks},
                             {"non_marked_violations", non_violate}};

  // One pass over the maximal disjoint systems for the witness search and
  // the rank maximum.
  std::map<std::vector<int>, bool> has_witness;  // keyed by support curves
  std::map<int, std::size_t> rank_histogram;
  std::size_t above_bound = 0;
  std::vector<int> best_system;
  int best_rank = -1;
  std::size_t max_size = 0;
  std::size_t systems = 0;
  if (params.scan_systems) {
    const PairTable pairs(inv, params.jobs);
    systems = for_each_maximal_system(inv, {}, [&](const std::vector<int>& sys) {
      const std::vector<int> system = sorted(sys);
      max_size = std::max(max_size, system.size());
      const auto twists = simple_twists(inv, system, pairs);
      const int rank = system_rank(twists);
      ++rank_histogram[rank];
      if (rank > 2 * g - 3) ++above_bound;
      if (rank > best_rank || (rank == best_rank && system < best_system)) {
        best_rank = rank;
        best_system = system;
      }
      for (const auto& f : twists) {
        auto key = support_curves(f);
        auto [it, inserted] = has_witness.emplace(key, false);
        if (it->second) continue;
        if (witness_in(twists, f)) it->second = true;
      }
    });
  }

  std::set<std::vector<int>> triangle_pairs;
  for (const auto& tri : c.marked_triangles()) {
    for (int v : tri) triangle_pairs.insert(c.vertices()[v].curves());
  }
  std::size_t bp_tri = 0, bp_tri_w = 0, sep = 0, sep_w = 0, bp_off = 0, bp_off_w = 0;
  for (const auto& [key, w] : has_witness) {
    if (key.size() == 1) {
      ++sep;
      sep_w += w;
    } else if (triangle_pairs.count(key)) {
      ++bp_tri;
      bp_tri_w += w;
    } else {
      ++bp_off;
      bp_off_w += w;
    }
  }
  nlohmann::json hist = nlohmann::json::array();
  for (auto [rank, count] : rank_histogram) hist.push_back({{"rank", rank}, {"count", count}});

  if (!params.scan_systems) {
    return {{"P7", p7}};
  }
  return {
      {"P5.2",
       {{"bound", 2 * g - 3},
        {"max_rank", best_rank < 0 ? 0 : best_rank},
        {"witness_system", best_system},
        {"systems", systems},
        {"systems_above_bound", above_bound},
        {"rank_histogram", hist},
        {"max_system_size", max_size}}},
      {"P6",
       {{"bounding_pairs_in_triangles", bp_tri},
        {"bounding_pairs_in_triangles_with_witness", bp_tri_w},
        {"bounding_pairs_off_triangles", bp_off},
        {"bounding_pairs_off_triangles_with_witness", bp_off_w},
        {"separating", sep},
        {"separating_with_witness", sep_w}}},
      {"P7", p7},
  };
}

}  // namespace torelli
