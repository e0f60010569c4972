#include <doctest.h>

#include <random>

#include "torelli/config.hpp"
#include "torelli/standard_curves.hpp"
#include "torelli/twist.hpp"

using namespace torelli;

namespace {

SurfacePtr surface(int g) { return std::make_shared<const Triangulation>(build_closed_surface(g)); }

}  // namespace

TEST_CASE("twist along a curve crossing once") {
  const SurfacePtr s = surface(2);
  const NormalCurve a = alpha_curve(s, 0), b = beta_curve(s, 0);
  for (int n : {1, -1, 2, -3}) {
    const NormalCurve c = dehn_twist(a, n, b);
    CHECK(geometric_intersection(c, b) == std::abs(n));
    CHECK(geometric_intersection(c, a) == 1);
    CHECK(dehn_twist(a, -n, c) == b);
  }
  CHECK(dehn_twist(a, 5, alpha_curve(s, 1)) == alpha_curve(s, 1));
}

TEST_CASE("twist homology follows the transvection formula") {
  const SurfacePtr s = surface(3);
  const std::vector<NormalCurve> gens = standard_generators(s);
  for (const auto& t : gens) {
    for (const auto& c : gens) {
      for (int n : {1, -2}) {
        const HomologyVector ht = homology_class(t), hc = homology_class(c);
        const HomologyVector image = homology_class(dehn_twist(t, n, c));
        HomologyVector expect = hc;
        const auto p = symplectic_pairing(ht, hc);
        for (std::size_t k = 0; k < expect.size(); ++k) expect[k] += n * p * ht[k];
        HomologyVector negated = expect;
        for (auto& x : negated) x = -x;
        CHECK((image == expect || image == negated));
        CHECK(apply_matrix(transvection(ht, n), hc) == expect);
      }
    }
  }
}

TEST_CASE("intersection with the twisted curve") {
  for (int g : {2, 3}) {
    ExperimentConfig cfg = standard_config(g);
    cfg.depth = 1;
    const SurfacePtr s = config_surface(cfg);
    const CurveInventory inv = build_inventory(cfg, s, 1);
    std::mt19937_64 rng(11 + g);
    for (int k = 0; k < 60; ++k) {
      const auto& t = inv[rng() % inv.size()].curve;
      const auto& c = inv[rng() % inv.size()].curve;
      if (t.total_weight() + c.total_weight() > 60) continue;
      const int n = static_cast<int>(rng() % 3 + 1) * (rng() % 2 ? 1 : -1);
      const int i = geometric_intersection(t, c);
      CHECK(geometric_intersection(dehn_twist(t, n, c), c) == std::abs(n) * i * i);
    }
  }
}

TEST_CASE("words, inverses and the Torelli test") {
  const SurfacePtr s = surface(3);
  const NormalCurve a = alpha_curve(s, 1), p = alpha_partner(s, 1);
  const MappingClassWord w = bp_map(a, p);
  CHECK(w.size() == 2);
  CHECK(is_torelli(w));
  CHECK(is_torelli(MappingClassWord({{handle_separating(s, 0), 3}})));
  const MappingClassWord t({{beta_curve(s, 0), 1}});
  CHECK_FALSE(is_torelli(t));
  CHECK((t * t.inverse()).empty());
  const IntMatrix m = homology_action(t * w);
  CHECK(is_symplectic(m));
  CHECK(m == multiply(homology_action(t), homology_action(w)));
  const NormalCurve c = gamma_curve(s, 1);
  CHECK(word_action(w.inverse(), word_action(w, c)) == c);
  CHECK(multiply(identity_matrix(6), m) == m);
}

TEST_CASE("symplectic check rejects a shear") {
  IntMatrix m = identity_matrix(4);
  m[0][2] = 1;
  CHECK_FALSE(is_symplectic(m));
  CHECK(is_symplectic(transvection({1, 0, 1, 0}, 2)));
}
