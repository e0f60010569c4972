#include <doctest.h>

#include "torelli/config.hpp"
#include "torelli/standard_curves.hpp"

using namespace torelli;

namespace {

CurveInventory small(int g, int depth, int jobs = 1) {
  ExperimentConfig cfg = standard_config(g);
  cfg.depth = depth;
  return build_inventory(cfg, config_surface(cfg), jobs);
}

}  // namespace

TEST_CASE("enumeration at depth zero returns the seeds") {
  ExperimentConfig cfg = standard_config(3);
  cfg.depth = 0;
  const SurfacePtr s = config_surface(cfg);
  const CurveInventory inv = build_inventory(cfg, s, 1);
  CHECK(inv.size() > 0);
  CHECK(inv.size() <= standard_seeds(s).size());
  for (const auto& c : standard_seeds(s)) CHECK(inv.index_of(c) >= 0);
  for (const auto& c : inv.curves()) CHECK(c.depth == 0);
}

TEST_CASE("cached invariants recompute") {
  const CurveInventory inv = small(3, 2);
  CHECK(inv.verify().empty());
  CHECK(inv.provenance().depth == 2);
  for (std::size_t i = 0; i < inv.size(); ++i) {
    const auto& c = inv[i];
    CHECK(c.separating == is_separating(c.curve));
    CHECK(c.curve.total_weight() <= 200);
    CHECK(inv.index_of(c.curve) == static_cast<int>(i));
    for (const auto& copy : c.copies) CHECK(inv.index_of(copy) == static_cast<int>(i));
    if (c.separating) CHECK(c.separating_genus == separating_genus(c.curve).first);
  }
}

TEST_CASE("disjointness is symmetric and matches geometry on representatives") {
  const CurveInventory inv = small(3, 1);
  for (std::size_t i = 0; i < inv.size(); ++i) {
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      CHECK(inv.disjoint(i, j) == inv.disjoint(j, i));
      if (geometric_intersection(inv[i].curve, inv[j].curve) == 0) CHECK(inv.disjoint(i, j));
    }
  }
}

TEST_CASE("inventory JSON round trip") {
  const CurveInventory inv = small(3, 2);
  const CurveInventory back = CurveInventory::from_json(inv.surface_ptr(), inv.to_json());
  CHECK(back.size() == inv.size());
  CHECK(back.to_json() == inv.to_json());
}

TEST_CASE("inventory is independent of the worker count") {
  CHECK(small(3, 2, 1).to_json() == small(3, 2, 3).to_json());
}

TEST_CASE("weight cap prunes") {
  ExperimentConfig cfg = standard_config(2);
  cfg.depth = 3;
  cfg.weight_cap = 12;
  const CurveInventory inv = build_inventory(cfg, config_surface(cfg), 1);
  for (const auto& c : inv.curves()) CHECK(c.curve.total_weight() <= 12);
  CHECK(inv.size() < small(2, 3).size());
}
