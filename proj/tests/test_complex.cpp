#include <doctest.h>

#include <set>

#include "torelli/complex.hpp"
#include "torelli/config.hpp"
#include "torelli/standard_curves.hpp"

using namespace torelli;

namespace {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  g.adj.assign(n, {});
  for (auto [u, v] : edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& row : g.adj) std::sort(row.begin(), row.end());
  return g;
}

CurveInventory small(int g, int depth) {
  ExperimentConfig cfg = standard_config(g);
  cfg.depth = depth;
  return build_inventory(cfg, config_surface(cfg), 1);
}

}  // namespace

TEST_CASE("graph components, paths and diameter") {
  const Graph path = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(path.num_edges() == 4);
  CHECK(diameter(path) == 4);
  CHECK(shortest_path(path, 0, 4)->size() == 5);
  const Graph cycle = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  CHECK(diameter(cycle, 2) == 3);
  const Graph two = make_graph(5, {{0, 1}, {2, 3}, {3, 4}});
  const ComponentReport r = connected_components(two);
  CHECK(r.count() == 2);
  CHECK(r.sizes == std::vector<int>{3, 2});
  CHECK_FALSE(shortest_path(two, 0, 4).has_value());
  CHECK(diameter(two) == 2);
  CHECK(two.adjacent(3, 4));
  CHECK_FALSE(two.adjacent(0, 4));
}

TEST_CASE("genus two separating complex has no edges") {
  const CurveInventory inv = small(2, 2);
  const SeparatingComplex tgs = build_tgs(inv, false);
  CHECK(tgs.curves.size() > 5);
  CHECK(tgs.graph.num_edges() == 0);
}

TEST_CASE("TG at genus three, depth two") {
  const CurveInventory inv = small(3, 2);
  const TorelliComplex tg(inv);
  CHECK(verify_complex(tg, 1).empty());
  CHECK(tg.num_separating() + tg.num_bounding_pairs() == tg.vertices().size());
  CHECK(connected_components(tg.graph()).count() == 1);
  CHECK(tg.marked_triangles().empty());
  for (std::size_t v = 0; v < tg.vertices().size(); ++v) {
    const TGVertex& x = tg.vertices()[v];
    if (x.kind == VertexKind::Separating) {
      CHECK(inv[x.a].separating);
      CHECK(tg.separating_vertex(x.a) == static_cast<int>(v));
    } else {
      CHECK(is_bounding_pair(inv[x.a].curve, inv[x.b].curve));
      CHECK(tg.bounding_pair_vertex(x.b, x.a) == static_cast<int>(v));
    }
  }
  const SeparatingComplex tgs = build_tgs(inv, false), g1 = build_tgs(inv, true);
  CHECK(verify_complex(inv, tgs, 1).empty());
  CHECK(g1.curves.size() <= tgs.curves.size());
  for (int c : g1.curves) CHECK(inv[c].separating_genus == 1);
}

TEST_CASE("marked triangles at genus four") {
  const CurveInventory inv = small(4, 1);
  const TorelliComplex tg(inv);
  CHECK(verify_complex(tg, 3).empty());
  REQUIRE_FALSE(tg.marked_triangles().empty());
  for (std::size_t t = 0; t < tg.marked_triangles().size(); ++t) {
    const auto& tri = tg.marked_triangles()[t];
    const auto& cs = tg.triangle_curves()[t];
    CHECK(detect_marked_triangle(inv, tg.vertices()[tri[0]], tg.vertices()[tri[1]],
                                 tg.vertices()[tri[2]]));
    CHECK(tg.adjacent(tri[0], tri[1]));
    CHECK(tg.adjacent(tri[1], tri[2]));
    CHECK(tg.adjacent(tri[0], tri[2]));
    std::vector<NormalCurve> curves;
    for (int c : cs) curves.push_back(inv[c].curve);
    CHECK(cut_components(curves).count() == 3);
    for (int v : tri) {
      const auto& at = tg.triangles_at(v);
      CHECK(std::find(at.begin(), at.end(), static_cast<int>(t)) != at.end());
    }
  }
}

TEST_CASE("maximal disjoint systems have at most 3g - 3 curves") {
  const CurveInventory inv = small(3, 1);
  const DisjointSystems ds = max_disjoint_systems(inv, {}, 50);
  CHECK(ds.max_size == 6);
  CHECK(ds.systems.size() <= 50);
  for (const auto& sys : ds.systems) {
    for (std::size_t i = 0; i < sys.size(); ++i) {
      for (std::size_t j = i + 1; j < sys.size(); ++j) CHECK(inv.disjoint(sys[i], sys[j]));
    }
    for (std::size_t c = 0; c < inv.size(); ++c) {
      if (std::find(sys.begin(), sys.end(), static_cast<int>(c)) != sys.end()) continue;
      bool all = true;
      for (int x : sys) all = all && inv.disjoint(x, c);
      CHECK_FALSE(all);
    }
  }
}

TEST_CASE("band sums give a separating curve disjoint from a bounding pair") {
  const SurfacePtr s = std::make_shared<const Triangulation>(build_closed_surface(3));
  const NormalCurve a = alpha_curve(s, 1), b = alpha_partner(s, 1);
  const auto c = band_sum_separating(a, b);
  REQUIRE(c.has_value());
  CHECK(is_separating(*c));
  CHECK(disjoint(*c, a));
  CHECK(disjoint(*c, b));
}

TEST_CASE("complex exports") {
  const CurveInventory inv = small(4, 1);
  const TorelliComplex tg(inv);
  const nlohmann::json j = tg.to_json();
  CHECK(j["kind"] == "tg");
  CHECK(j["num_vertices"] == tg.vertices().size());
  CHECK(j["edges"].size() == tg.graph().num_edges());
  CHECK(j["marked_triangles"].size() == tg.marked_triangles().size());
  CHECK(tg.to_dot().rfind("graph", 0) == 0);
  const nlohmann::json r = component_report_json(tg.graph());
  CHECK(r["num_components"] == 1);
}
