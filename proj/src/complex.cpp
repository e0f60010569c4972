#include "torelli/complex.hpp"

#include "torelli/standard_curves.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <sstream>

namespace torelli {

std::size_t Graph::num_edges() const {
  std::size_t total = 0;
  for (const auto& row : adj) total += row.size();
  return total / 2;
}

bool Graph::adjacent(int u, int v) const {
  const auto& row = adj[u];
  return std::binary_search(row.begin(), row.end(), v);
}

ComponentReport connected_components(const Graph& g) {
  const int n = static_cast<int>(g.size());
  ComponentReport r;
  r.component.assign(n, -1);
  std::vector<int> sizes;
  for (int s = 0; s < n; ++s) {
    if (r.component[s] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    int size = 0;
    std::vector<int> stack{s};
    r.component[s] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      ++size;
      for (int v : g.adj[u]) {
        if (r.component[v] < 0) {
          r.component[v] = id;
          stack.push_back(v);
        }
      }
    }
    sizes.push_back(size);
  }
  r.sizes = sizes;
  std::sort(r.sizes.begin(), r.sizes.end(), std::greater<>());
  return r;
}

namespace {

std::vector<int> bfs(const Graph& g, int s) {
  std::vector<int> dist(g.size(), -1);
  std::vector<int> queue{s};
  dist[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

std::optional<std::vector<int>> shortest_path(const Graph& g, int u, int v) {
  const int n = static_cast<int>(g.size());
  if (u < 0 || v < 0 || u >= n || v >= n) return std::nullopt;
  std::vector<int> parent(n, -2);
  std::vector<int> queue{u};
  parent[u] = -1;
  for (std::size_t head = 0; head < queue.size() && parent[v] == -2; ++head) {
    int x = queue[head];
    for (int y : g.adj[x]) {
      if (parent[y] == -2) {
        parent[y] = x;
        queue.push_back(y);
      }
    }
  }
  if (parent[v] == -2) return std::nullopt;
  std::vector<int> path;
  for (int x = v; x != -1; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

int diameter(const Graph& g, int jobs) {
  if (g.size() == 0) return 0;
  ComponentReport comps = connected_components(g);
  // Restrict to the largest component (smallest id among ties).
  std::vector<int> count(comps.count(), 0);
  for (int c : comps.component) ++count[c];
  const int target = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<int> members;
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    if (comps.component[v] == target) members.push_back(v);
  }
  auto ecc_in = [&](int s) {
    auto d = bfs(g, s);
    int e = 0;
    for (int v : members) e = std::max(e, d[v]);
    return e;
  };
  // iFUB: exact diameter from a central start vertex.
  int start = members[0];
  for (int v : members) {
    if (g.adj[v].size() > g.adj[start].size()) start = v;
  }
  auto dist = bfs(g, start);
  int level = 0;
  for (int v : members) level = std::max(level, dist[v]);
  std::vector<std::vector<int>> fringe(level + 1);
  for (int v : members) fringe[dist[v]].push_back(v);
  int lower = level;
  for (int i = level; i >= 1; --i) {
    const auto& f = fringe[i];
    std::vector<int> ecc(f.size());
    parallel_for(f.size(), jobs, [&](std::size_t k) { ecc[k] = ecc_in(f[k]); });
    int bi = ecc.empty() ? 0 : *std::max_element(ecc.begin(), ecc.end());
    lower = std::max(lower, bi);
    if (lower > 2 * (i - 1)) return lower;
  }
  return lower;
}

int TorelliComplex::separating_vertex(int curve) const {
  return curve >= 0 && curve < static_cast<int>(sep_vertex_.size()) ? sep_vertex_[curve] : -1;
}

int TorelliComplex::bounding_pair_vertex(int c1, int c2) const {
  auto it = bp_vertex_.find({std::min(c1, c2), std::max(c1, c2)});
  return it == bp_vertex_.end() ? -1 : it->second;
}

std::size_t TorelliComplex::num_separating() const {
  return std::count_if(vertices_.begin(), vertices_.end(),
                       [](const TGVertex& v) { return v.kind == VertexKind::Separating; });
}

std::size_t TorelliComplex::num_bounding_pairs() const {
  return vertices_.size() - num_separating();
}

std::vector<std::pair<int, int>> bounding_pairs(const CurveInventory& inv, int jobs) {
  std::map<HomologyVector, std::vector<int>> groups;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (!inv[i].separating) groups[inv[i].homology].push_back(static_cast<int>(i));
  }
  std::vector<std::vector<int>> lists;
  for (auto& [h, list] : groups) lists.push_back(list);
  std::vector<std::vector<std::pair<int, int>>> found(lists.size());
  parallel_for(lists.size(), jobs, [&](std::size_t k) {
    const auto& list = lists[k];
    for (std::size_t x = 0; x < list.size(); ++x) {
      for (std::size_t y = x + 1; y < list.size(); ++y) {
        int a = list[x], b = list[y];
        if (!inv.disjoint(a, b)) continue;
        ComplementProfile p = cut_components({inv[a].curve, inv[b].curve});
        if (p.count() == 2 && !p.has_annulus()) found[k].emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  });
  std::vector<std::pair<int, int>> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  std::sort(out.begin(), out.end());
  return out;
}

CurveInventory complete_links(const CurveInventory& inv, int jobs) {
  const std::size_t n = inv.size();
  BitRow separating(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (inv[i].separating) separating.set(i);
  }
  std::vector<std::pair<int, int>> bare;
  for (auto [a, b] : bounding_pairs(inv, jobs)) {
    const auto& ra = inv.disjoint_row(a).words();
    const auto& rb = inv.disjoint_row(b).words();
    const auto& rs = separating.words();
    bool linked = false;
    for (std::size_t w = 0; w < rs.size() && !linked; ++w) linked = (ra[w] & rb[w] & rs[w]) != 0;
    if (!linked) bare.emplace_back(a, b);
  }
  std::vector<std::optional<NormalCurve>> found(bare.size());
  parallel_for(bare.size(), jobs, [&](std::size_t k) {
    found[k] = band_sum_separating(inv[bare[k].first].curve, inv[bare[k].second].curve);
  });
  std::vector<std::pair<NormalCurve, int>> curves;
  for (const auto& c : inv.curves()) {
    curves.emplace_back(c.curve, c.depth);
    for (const auto& x : c.copies) curves.emplace_back(x, c.depth);
  }
  Provenance prov = inv.provenance();
  prov.parallel_merged = 0;
  std::vector<NormalCurve> added;
  for (const auto& f : found) {
    if (f && inv.index_of(*f) < 0) added.push_back(*f);
  }
  std::sort(added.begin(), added.end());
  added.erase(std::unique(added.begin(), added.end()), added.end());
  for (const auto& c : added) curves.emplace_back(c, prov.depth + 1);
  prov.completion_curves += static_cast<int>(added.size());
  if (prov.completion_curves == inv.provenance().completion_curves) return inv;
  return CurveInventory(inv.surface_ptr(), std::move(curves), prov, jobs);
}

TorelliComplex::TorelliComplex(const CurveInventory& inv, int jobs) : inv_(&inv) {
  const int n = static_cast<int>(inv.size());
  sep_vertex_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (inv[i].separating) {
      sep_vertex_[i] = static_cast<int>(vertices_.size());
      vertices_.push_back({VertexKind::Separating, i, -1});
    }
  }
  for (auto [a, b] : bounding_pairs(inv, jobs)) {
    bp_vertex_[{a, b}] = static_cast<int>(vertices_.size());
    vertices_.push_back({VertexKind::BoundingPair, a, b});
  }

  // Curves disjoint from (or equal to) every constituent of each vertex.
  const int nv = static_cast<int>(vertices_.size());
  std::vector<BitRow> mask(nv);
  parallel_for(nv, jobs, [&](std::size_t v) {
    const auto curves = vertices_[v].curves();
    std::vector<std::uint64_t> words = inv.disjoint_row(curves[0]).words();
    for (std::size_t k = 1; k < curves.size(); ++k) {
      const auto& other = inv.disjoint_row(curves[k]).words();
      for (std::size_t w = 0; w < words.size(); ++w) words[w] &= other[w];
    }
    BitRow row(n);
    for (int c = 0; c < n; ++c) {
      if (words[c >> 6] >> (c & 63) & 1U) row.set(c);
    }
    for (int c : curves) {
      bool ok = true;
      for (int d : curves) ok = ok && (c == d || inv.disjoint(c, d));
      if (ok) row.set(c);
    }
    mask[v] = std::move(row);
  });
  graph_.adj.assign(nv, {});
  parallel_for(nv, jobs, [&](std::size_t u) {
    for (int v = 0; v < nv; ++v) {
      if (v == static_cast<int>(u)) continue;
      bool ok = true;
      for (int c : vertices_[v].curves()) ok = ok && mask[u].test(c);
      if (ok) graph_.adj[u].push_back(v);
    }
  });

  // Marked triangles: triples of curves that are pairwise bounding pairs.
  std::vector<std::vector<int>> bp_nbrs(n);
  for (const auto& [key, v] : bp_vertex_) {
    bp_nbrs[key.first].push_back(key.second);
    bp_nbrs[key.second].push_back(key.first);
  }
  for (auto& l : bp_nbrs) std::sort(l.begin(), l.end());
  for (const auto& [key, v] : bp_vertex_) {
    auto [a, b] = key;
    std::vector<int> common;
    std::set_intersection(bp_nbrs[a].begin(), bp_nbrs[a].end(), bp_nbrs[b].begin(),
                          bp_nbrs[b].end(), std::back_inserter(common));
    for (int c : common) {
      if (c <= b) continue;
      std::array<int, 3> verts{v, bounding_pair_vertex(b, c), bounding_pair_vertex(a, c)};
      std::sort(verts.begin(), verts.end());
      marked_.push_back(verts);
      triangle_curves_.push_back({a, b, c});
    }
  }
  std::vector<std::size_t> order(marked_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return marked_[x] < marked_[y]; });
  std::vector<std::array<int, 3>> m2, c2;
  for (auto i : order) {
    m2.push_back(marked_[i]);
    c2.push_back(triangle_curves_[i]);
  }
  marked_ = std::move(m2);
  triangle_curves_ = std::move(c2);
  triangles_at_.assign(nv, {});
  for (std::size_t t = 0; t < marked_.size(); ++t) {
    for (int v : marked_[t]) triangles_at_[v].push_back(static_cast<int>(t));
  }
}

bool detect_marked_triangle(const CurveInventory& inv, const TGVertex& v1, const TGVertex& v2,
                            const TGVertex& v3) {
  for (const auto* v : {&v1, &v2, &v3}) {
    if (v->kind != VertexKind::BoundingPair) return false;
  }
  if (v1 == v2 || v2 == v3 || v1 == v3) return false;
  std::vector<int> classes{v1.a, v1.b, v2.a, v2.b, v3.a, v3.b};
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() != 3) return false;
  for (int i = 0; i < 3; ++i) {
    if (inv[classes[i]].separating) return false;
    for (int j = i + 1; j < 3; ++j) {
      if (!inv.disjoint(classes[i], classes[j])) return false;
      if (!is_bounding_pair(inv[classes[i]].curve, inv[classes[j]].curve)) return false;
    }
  }
  // Each vertex is one of the three pairs; distinctness makes it all three.
  return true;
}

SeparatingComplex build_tgs(const CurveInventory& inv, bool genus_one_only) {
  SeparatingComplex c;
  c.genus_one_only = genus_one_only;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (!inv[i].separating) continue;
    if (genus_one_only && inv[i].separating_genus != 1) continue;
    c.curves.push_back(static_cast<int>(i));
  }
  const int n = static_cast<int>(c.curves.size());
  c.graph.adj.assign(n, {});
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && inv.disjoint(c.curves[x], c.curves[y])) c.graph.adj[x].push_back(y);
    }
  }
  return c;
}

namespace {

nlohmann::json edge_list(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (int u = 0; u < static_cast<int>(g.size()); ++u) {
    for (int v : g.adj[u]) {
      if (u < v) edges.push_back({u, v});
    }
  }
  return edges;
}

}  // namespace

nlohmann::json TorelliComplex::to_json() const {
  nlohmann::json verts = nlohmann::json::array();
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const auto& x = vertices_[v];
    verts.push_back({{"id", v},
                     {"type", x.kind == VertexKind::Separating ? "separating" : "bounding_pair"},
                     {"curves", x.curves()}});
  }
  nlohmann::json marked = nlohmann::json::array();
  for (std::size_t t = 0; t < marked_.size(); ++t) {
    marked.push_back({{"vertices", marked_[t]}, {"curves", triangle_curves_[t]}});
  }
  return {{"kind", "tg"},
          {"num_vertices", vertices_.size()},
          {"num_edges", graph_.num_edges()},
          {"vertices", verts},
          {"edges", edge_list(graph_)},
          {"marked_triangles", marked}};
}

std::string TorelliComplex::to_dot() const {
  std::ostringstream out;
  out << "graph TG {\n";
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const auto& x = vertices_[v];
    if (x.kind == VertexKind::Separating) {
      out << "  v" << v << " [label=\"S" << x.a << "\", color=red];\n";
    } else {
      out << "  v" << v << " [label=\"B" << x.a << "_" << x.b << "\", color=blue];\n";
    }
  }
  for (std::size_t u = 0; u < graph_.size(); ++u) {
    for (int v : graph_.adj[u]) {
      if (static_cast<int>(u) < v) out << "  v" << u << " -- v" << v << ";\n";
    }
  }
  for (const auto& t : marked_) {
    out << "  // marked triangle v" << t[0] << " v" << t[1] << " v" << t[2] << "\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json SeparatingComplex::to_json(const CurveInventory& inv) const {
  nlohmann::json verts = nlohmann::json::array();
  for (std::size_t v = 0; v < curves.size(); ++v) {
    verts.push_back({{"id", v},
                     {"type", "separating"},
                     {"curves", {curves[v]}},
                     {"separating_genus", inv[curves[v]].separating_genus}});
  }
  return {{"kind", genus_one_only ? "tgs-genus1" : "tgs"},
          {"num_vertices", curves.size()},
          {"num_edges", graph.num_edges()},
          {"vertices", verts},
          {"edges", edge_list(graph)},
          {"marked_triangles", nlohmann::json::array()}};
}

std::string SeparatingComplex::to_dot(const CurveInventory& inv) const {
  std::ostringstream out;
  out << "graph TGS {\n";
  for (std::size_t v = 0; v < curves.size(); ++v) {
    out << "  v" << v << " [label=\"S" << curves[v] << "\", color="
        << (inv[curves[v]].separating_genus == 1 ? "red" : "orange") << "];\n";
  }
  for (std::size_t u = 0; u < graph.size(); ++u) {
    for (int v : graph.adj[u]) {
      if (static_cast<int>(u) < v) out << "  v" << u << " -- v" << v << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

namespace {

bool recomputed_disjoint(const CurveInventory& inv, int i, int j) {
  if (i == j) return true;
  std::vector<NormalCurve> a{inv[i].curve}, b{inv[j].curve};
  a.insert(a.end(), inv[i].copies.begin(), inv[i].copies.end());
  b.insert(b.end(), inv[j].copies.begin(), inv[j].copies.end());
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (geometric_intersection(x, y) == 0) return true;
    }
  }
  return false;
}

bool recomputed_adjacent(const CurveInventory& inv, const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a) {
    for (int y : b) {
      if (!recomputed_disjoint(inv, x, y)) return false;
    }
  }
  return true;
}

template <typename CurvesOf>
void check_graph(const CurveInventory& inv, const Graph& g, CurvesOf curves_of, std::uint64_t seed,
                 std::size_t samples, std::vector<std::string>& issues) {
  const int n = static_cast<int>(g.size());
  for (int u = 0; u < n; ++u) {
    for (int v : g.adj[u]) {
      if (u == v) issues.push_back("self loop at " + std::to_string(u));
      if (!g.adjacent(v, u)) issues.push_back("asymmetric edge " + std::to_string(u) + "-" + std::to_string(v));
      if (u < v && !recomputed_adjacent(inv, curves_of(u), curves_of(v))) {
        issues.push_back("edge " + std::to_string(u) + "-" + std::to_string(v) + " has intersecting curves");
      }
    }
  }
  if (n < 2) return;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (u == v || g.adjacent(u, v)) continue;
    if (recomputed_adjacent(inv, curves_of(u), curves_of(v))) {
      issues.push_back("missing edge " + std::to_string(u) + "-" + std::to_string(v));
    }
  }
}

}  // namespace

std::vector<std::string> verify_complex(const TorelliComplex& c, std::uint64_t seed,
                                        std::size_t non_edge_samples) {
  const CurveInventory& inv = c.inventory();
  std::vector<std::string> issues;
  for (std::size_t v = 0; v < c.vertices().size(); ++v) {
    const TGVertex& x = c.vertices()[v];
    if (x.kind == VertexKind::Separating && !is_separating(inv[x.a].curve)) {
      issues.push_back("vertex " + std::to_string(v) + " is not separating");
    }
    if (x.kind == VertexKind::BoundingPair && !is_bounding_pair(inv[x.a].curve, inv[x.b].curve)) {
      issues.push_back("vertex " + std::to_string(v) + " is not a bounding pair");
    }
  }
  check_graph(inv, c.graph(), [&](int v) { return c.vertices()[v].curves(); }, seed, non_edge_samples,
              issues);
  for (const auto& t : c.marked_triangles()) {
    const auto name = "marked triangle " + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                      std::to_string(t[2]);
    if (!c.adjacent(t[0], t[1]) || !c.adjacent(t[1], t[2]) || !c.adjacent(t[0], t[2])) {
      issues.push_back(name + " is not a triangle");
    }
    if (!detect_marked_triangle(inv, c.vertices()[t[0]], c.vertices()[t[1]], c.vertices()[t[2]])) {
      issues.push_back(name + " fails detection");
    }
  }
  return issues;
}

std::vector<std::string> verify_complex(const CurveInventory& inv, const SeparatingComplex& c,
                                        std::uint64_t seed, std::size_t non_edge_samples) {
  std::vector<std::string> issues;
  for (int curve : c.curves) {
    if (!is_separating(inv[curve].curve)) issues.push_back("curve " + std::to_string(curve) + " is not separating");
    if (c.genus_one_only && !is_genus_one_separating(inv[curve].curve)) {
      issues.push_back("curve " + std::to_string(curve) + " is not genus one");
    }
  }
  check_graph(inv, c.graph, [&](int v) { return std::vector<int>{c.curves[v]}; }, seed,
              non_edge_samples, issues);
  return issues;
}

std::size_t for_each_maximal_system(const CurveInventory& inv, const std::vector<int>& must_contain,
                                    const std::function<void(const std::vector<int>&)>& fn) {
  const int n = static_cast<int>(inv.size());
  for (int a : must_contain) {
    for (int b : must_contain) {
      if (!inv.disjoint(a, b)) return 0;
    }
  }
  std::vector<int> base(must_contain);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<int> candidates;
  for (int v = 0; v < n; ++v) {
    if (std::binary_search(base.begin(), base.end(), v)) continue;
    bool ok = true;
    for (int a : base) ok = ok && inv.disjoint(v, a);
    if (ok) candidates.push_back(v);
  }
  auto neighbours = [&](int v, const std::vector<int>& set) {
    std::vector<int> out;
    for (int u : set) {
      if (u != v && inv.disjoint(u, v)) out.push_back(u);
    }
    return out;
  };
  // Bron-Kerbosch with pivoting.
  std::size_t count = 0;
  std::vector<int> r = base;
  std::function<void(std::vector<int>, std::vector<int>)> expand = [&](std::vector<int> p,
                                                                       std::vector<int> x) {
    if (p.empty()) {
      if (x.empty()) {
        ++count;
        fn(r);
      }
      return;
    }
    int pivot = -1;
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
      for (int u : *set) {
        std::size_t cnt = 0;
        for (int v : p) cnt += (v != u && inv.disjoint(u, v));
        if (pivot < 0 || cnt > best) {
          pivot = u;
          best = cnt;
        }
      }
    }
    std::vector<int> todo;
    for (int v : p) {
      if (v == pivot || !inv.disjoint(v, pivot)) todo.push_back(v);
    }
    for (int v : todo) {
      r.push_back(v);
      expand(neighbours(v, p), neighbours(v, x));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  };
  expand(candidates, {});
  return count;
}

DisjointSystems max_disjoint_systems(const CurveInventory& inv, const std::vector<int>& must_contain,
                                     std::size_t limit) {
  DisjointSystems result;
  result.total = for_each_maximal_system(inv, must_contain, [&](const std::vector<int>& sys) {
    result.max_size = std::max(result.max_size, sys.size());
    if (result.systems.size() < limit) {
      std::vector<int> sorted = sys;
      std::sort(sorted.begin(), sorted.end());
      result.systems.push_back(std::move(sorted));
    }
  });
  std::sort(result.systems.begin(), result.systems.end());
  return result;
}

nlohmann::json component_report_json(const Graph& g, int jobs) {
  ComponentReport r = connected_components(g);
  std::map<int, int> histogram;
  for (int s : r.sizes) ++histogram[s];
  nlohmann::json hist = nlohmann::json::array();
  for (auto it = histogram.rbegin(); it != histogram.rend(); ++it) {
    hist.push_back({{"size", it->first}, {"count", it->second}});
  }
  return {{"num_vertices", g.size()},
          {"num_edges", g.num_edges()},
          {"num_components", r.count()},
          {"largest_component", r.sizes.empty() ? 0 : r.sizes[0]},
          {"size_histogram", hist},
          {"diameter_of_largest", diameter(g, jobs)}};
}

}  // namespace torelli
