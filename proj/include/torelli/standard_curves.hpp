#pragma once

#include <optional>
#include <vector>

#include "torelli/curve.hpp"

namespace torelli {

/// Walk inside the polygon from the midpoint of polygon side `from` to the
/// midpoint of polygon side `to`, ending with the exit through `to`.
Walk chord_walk(const Triangulation& t, int from, int to);

/// Curve crossing polygon sides b_i once: homology class a_i.
NormalCurve alpha_curve(const SurfacePtr& s, int i);
/// Curve crossing polygon sides a_i once: homology class b_i.
NormalCurve beta_curve(const SurfacePtr& s, int i);
/// Curve crossing alpha_i and alpha_{i+1} once each, disjoint from the rest.
NormalCurve gamma_curve(const SurfacePtr& s, int i);

/// Normal curve parallel to an edge loop on its left.
NormalCurve edge_pushoff(const SurfacePtr& s, EdgeCycle e);

/// Normal curve parallel to the polygon diagonal from corner x to corner y
/// (0 <= x, x + 2 <= y <= 4g - 1) on its left, i.e. on the side of corner 0.
NormalCurve diagonal_pushoff(const SurfacePtr& s, int x, int y);

/// Boundary of a neighbourhood of two curves crossing once.
NormalCurve commutator_curve(const NormalCurve& a, const NormalCurve& b);

/// Lightest separating curve, essential in the closed surface, disjoint
/// from a and b, found among band sums a . p . b^{+-1} . p^{-1} over
/// shortest dual paths p; nullopt if none is simple.
std::optional<NormalCurve> band_sum_separating(const NormalCurve& a, const NormalCurve& b);

/// Genus-one separating curve cutting off handle i.
NormalCurve handle_separating(const SurfacePtr& s, int i);
/// Separating curve cutting off handles 0 .. h - 1.
NormalCurve prefix_separating(const SurfacePtr& s, int h);

/// Separating curve cutting off handles i .. j - 1 (0 <= i < j <= g, j - i < g).
NormalCurve interval_separating(const SurfacePtr& s, int i, int j);
/// Curve homologous to a_j that cobounds with alpha_j a piece containing
/// handles i .. j - 1 (0 <= i < j < g).
NormalCurve interval_partner(const SurfacePtr& s, int i, int j);

/// Nonseparating curve homologous to a_i, cutting off handles 0 .. i - 1
/// together with alpha_i; forms a bounding pair with alpha_i for 1 <= i <= g - 2
/// and coincides with alpha_i for i = g - 1.
NormalCurve alpha_partner(const SurfacePtr& s, int i);

/// Twist generators alpha_i, beta_i, gamma_i.
std::vector<NormalCurve> standard_generators(const SurfacePtr& s);

/// Seed configuration: the generators, the handle and interval separating
/// curves and the interval partners of the alpha curves, deduplicated.
std::vector<NormalCurve> standard_seeds(const SurfacePtr& s);

}  // namespace torelli
