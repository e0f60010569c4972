#include <doctest.h>

#include <random>

#include "torelli/config.hpp"
#include "torelli/standard_curves.hpp"
#include "torelli/twist.hpp"

using namespace torelli;

namespace {

SurfacePtr surface(int g) { return std::make_shared<const Triangulation>(build_closed_surface(g)); }

}  // namespace

TEST_CASE("standard curves intersect like a symplectic basis") {
  const SurfacePtr s = surface(3);
  for (int i = 0; i < 3; ++i) {
    CHECK(geometric_intersection(alpha_curve(s, i), beta_curve(s, i)) == 1);
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      CHECK(geometric_intersection(alpha_curve(s, i), beta_curve(s, j)) == 0);
      CHECK(disjoint(alpha_curve(s, i), alpha_curve(s, j)));
    }
    HomologyVector a(6, 0), b(6, 0);
    a[2 * i] = 1;
    b[2 * i + 1] = 1;
    CHECK(homology_class(alpha_curve(s, i)) == a);
    CHECK(homology_class(beta_curve(s, i)) == b);
    CHECK(std::abs(algebraic_intersection({alpha_curve(s, i)}, {beta_curve(s, i)})) == 1);
  }
  for (int i = 0; i + 1 < 3; ++i) {
    CHECK(geometric_intersection(gamma_curve(s, i), alpha_curve(s, i)) == 1);
    CHECK(geometric_intersection(gamma_curve(s, i), alpha_curve(s, i + 1)) == 1);
  }
}

TEST_CASE("separating curves and bounding pairs") {
  const SurfacePtr s = surface(4);
  for (int i = 0; i < 4; ++i) {
    const NormalCurve h = handle_separating(s, i);
    CHECK(is_separating(h));
    CHECK(is_genus_one_separating(h));
    CHECK(separating_genus(h) == std::pair<int, int>{1, 3});
  }
  CHECK(separating_genus(prefix_separating(s, 2)) == std::pair<int, int>{2, 2});
  for (int i = 1; i < 4; ++i) {
    const NormalCurve p = alpha_partner(s, i);
    CHECK_FALSE(is_separating(p));
    CHECK(is_bounding_pair(alpha_curve(s, i), p) == (i < 3));
    if (i == 3) CHECK(p == alpha_curve(s, i));
    CHECK(homology_class(p) == homology_class(alpha_curve(s, i)));
  }
  CHECK_FALSE(is_bounding_pair(alpha_curve(s, 0), alpha_curve(s, 1)));
  CHECK(cut_components({alpha_curve(s, 0), alpha_curve(s, 1)}).count() == 1);
}

TEST_CASE("commutator curve of a and b is the genus-one separating curve") {
  const SurfacePtr s = surface(2);
  const NormalCurve c = commutator_curve(alpha_curve(s, 0), beta_curve(s, 0));
  CHECK(is_separating(c));
  CHECK(disjoint(c, alpha_curve(s, 1)));
  CHECK(geometric_intersection(c, alpha_curve(s, 0)) == 0);
}

TEST_CASE("normalize rejects inessential and multi-component weights") {
  const SurfacePtr s = surface(2);
  CHECK_THROWS_AS(normalize(s, std::vector<int>(s->num_edges(), 0)), CurveError);
  std::vector<int> twice = alpha_curve(s, 0).weights();
  for (int& x : twice) x *= 2;
  CHECK_THROWS_AS(normalize(s, twice), CurveError);
  CHECK(normalize(s, alpha_curve(s, 0).weights()) == alpha_curve(s, 0));
}

TEST_CASE("curve JSON round trip") {
  const SurfacePtr s = surface(3);
  const NormalCurve c = dehn_twist(beta_curve(s, 1), 2, gamma_curve(s, 0));
  CHECK(NormalCurve::from_json(s, c.to_json()) == c);
}

TEST_CASE("intersection properties on enumerated curves") {
  for (int g : {2, 3}) {
    ExperimentConfig cfg = standard_config(g);
    cfg.depth = 1;
    const SurfacePtr s = config_surface(cfg);
    const CurveInventory inv = build_inventory(cfg, s, 1);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 300; ++k) {
      const auto& a = inv[rng() % inv.size()].curve;
      const auto& b = inv[rng() % inv.size()].curve;
      const int i = geometric_intersection(a, b);
      CHECK(i == geometric_intersection(b, a));
      const auto alg = symplectic_pairing(homology_class(a), homology_class(b));
      CHECK(i >= std::abs(alg));
      CHECK((i - alg) % 2 == 0);
      if (!(a == b)) CHECK(disjoint(a, b) == disjoint_by_full_trace(a, b));
      if (!(a == b)) CHECK(disjoint(a, b) == (i == 0));
      CHECK(self_intersection(a.surface(), a.walk()) == 0);
    }
  }
}

TEST_CASE("walk helpers") {
  const SurfacePtr s = surface(2);
  const NormalCurve c = gamma_curve(s, 0);
  const Walk r = reverse_walk(*s, c.walk());
  CHECK(is_closed_walk(*s, r));
  CHECK(walk_weights(*s, r) == c.weights());
  CHECK(reverse_walk(*s, r) == c.walk());
  CHECK(reduce_walk(*s, c.walk()) == c.walk());
  CHECK(walk_homology(*s, r) == HomologyVector{-homology_class(c)[0], -homology_class(c)[1],
                                               -homology_class(c)[2], -homology_class(c)[3]});
}
