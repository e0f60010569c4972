#include <doctest.h>

#include "torelli/config.hpp"
#include "torelli/twist_algebra.hpp"

using namespace torelli;

namespace {

CurveInventory small(int g, int depth) {
  ExperimentConfig cfg = standard_config(g);
  cfg.depth = depth;
  return build_inventory(cfg, config_surface(cfg), 1);
}

}  // namespace

TEST_CASE("Smith invariants and lattice rank") {
  CHECK(smith_invariants({{2, 4}, {6, 8}}) == std::vector<std::int64_t>{2, 4});
  CHECK(smith_invariants({{1, 2, 3}, {2, 4, 6}}) == std::vector<std::int64_t>{1});
  CHECK(smith_invariants({{6, 0}, {0, 4}}) == std::vector<std::int64_t>{2, 12});
  CHECK(lattice_rank({{1, -1, 0}, {0, 1, -1}, {1, 0, -1}}) == 2);
  CHECK(lattice_rank({{0, 0}}) == 0);
  CHECK(lattice_rank({}) == 0);
}

TEST_CASE("twist vectors on a disjoint system") {
  const CurveInventory inv = small(4, 1);
  const TorelliComplex tg(inv);
  REQUIRE_FALSE(tg.triangle_curves().empty());
  const auto& cs = tg.triangle_curves()[0];
  const DisjointSystem s = make_system(inv, {cs[0], cs[1], cs[2]});
  const auto f = bounding_pair_twist(inv, s, 0, 1, 2);
  CHECK(f.vector == std::vector<std::int64_t>{2, -2, 0});
  CHECK(f.support() == std::vector<int>{0, 1});
  CHECK(support_curves(f) == std::vector<int>{cs[0], cs[1]});
  const auto g = bounding_pair_twist(inv, s, 1, 2), h = bounding_pair_twist(inv, s, 0, 2, -3);
  CHECK(subgroup_rank({f, g, h}) == 2);
  CHECK(subgroup_rank({f, f}) == 1);
  CHECK(rank_conditions({f, g, h}));
  CHECK_FALSE(rank_conditions({f, f, g}));
  CHECK_THROWS_AS(separating_twist(inv, s, 0), std::invalid_argument);
}

TEST_CASE("make_system rejects intersecting curves") {
  const CurveInventory inv = small(3, 1);
  int a = -1, b = -1;
  for (std::size_t i = 0; i < inv.size() && a < 0; ++i) {
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      if (!inv.disjoint(i, j)) {
        a = static_cast<int>(i);
        b = static_cast<int>(j);
        break;
      }
    }
  }
  REQUIRE(a >= 0);
  CHECK_THROWS_AS(make_system(inv, {a, b}), std::invalid_argument);
  CHECK_THROWS_AS(make_system(inv, {a, a}), std::invalid_argument);
}

TEST_CASE("marked triangles satisfy the rank conditions") {
  const CurveInventory inv = small(4, 1);
  const TorelliComplex tg(inv);
  for (std::size_t t = 0; t < tg.marked_triangles().size(); ++t) {
    for (std::array<std::int64_t, 3> pw : {std::array<std::int64_t, 3>{1, 1, 1}, {2, -3, 1}, {-1, -2, 3}}) {
      CHECK(verify_marked_triangle_rank(tg, static_cast<int>(t), pw));
    }
  }
}

TEST_CASE("separating twists have no rank-two witness, bounding pairs in triangles do") {
  const CurveInventory inv = small(4, 1);
  const TorelliComplex tg(inv);
  int checked = 0;
  for (std::size_t v = 0; v < tg.vertices().size() && checked < 6; ++v) {
    const TGVertex& x = tg.vertices()[v];
    if (x.kind != VertexKind::Separating) continue;
    const DisjointSystem s = make_system(inv, {x.a});
    CHECK_FALSE(bp_criterion_search(separating_twist(inv, s, 0), inv).has_value());
    ++checked;
  }
  const auto& cs = tg.triangle_curves()[0];
  const DisjointSystem s = make_system(inv, {cs[0], cs[1]});
  const auto f = bounding_pair_twist(inv, s, 0, 1);
  const auto w = bp_criterion_search(f, inv);
  REQUIRE(w.has_value());
  CHECK(support_curves(w->first) != support_curves(f));
  CHECK(support_curves(w->second) != support_curves(f));
  CHECK(support_curves(w->first) != support_curves(w->second));
}

TEST_CASE("maximal abelian rank at genus four") {
  const CurveInventory inv = small(4, 1);
  const AbelianRankReport r = max_abelian_rank(inv);
  CHECK(r.max_rank == 5);
  CHECK(r.systems > 0);
  CHECK(subgroup_rank(simple_twists_on(inv, r.witness)) == 5);
}

TEST_CASE("props report") {
  const CurveInventory inv = small(4, 1);
  const TorelliComplex tg(inv);
  PropsParams p;
  p.power_samples = 5;
  p.seed = 3;
  const nlohmann::json a = props_report(tg, p);
  CHECK(a["P5.2"]["max_rank"] == 5);
  CHECK(a["P5.2"]["systems_above_bound"] == 0);
  CHECK(a["P6"]["separating_with_witness"] == 0);
  CHECK(a["P6"]["bounding_pairs_in_triangles_with_witness"] == a["P6"]["bounding_pairs_in_triangles"]);
  CHECK(a["P7"]["triangle_passes"] == a["P7"]["triangle_checks"]);
  p.jobs = 2;
  CHECK(props_report(tg, p) == a);
  p.scan_systems = false;
  CHECK_FALSE(props_report(tg, p).contains("P5.2"));
}
