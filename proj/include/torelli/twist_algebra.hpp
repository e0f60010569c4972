#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "torelli/complex.hpp"
#include "torelli/twist.hpp"

namespace torelli {

/// Pairwise disjoint, pairwise distinct inventory curves.
struct DisjointSystem {
  std::vector<int> classes;
  friend bool operator==(const DisjointSystem&, const DisjointSystem&) = default;
};

/// Validates the system against the inventory; throws std::invalid_argument.
DisjointSystem make_system(const CurveInventory& inv, std::vector<int> classes);

/// Exponent vector of a simple-twist power over a disjoint system: n e_i for
/// a separating class i, n (e_i - e_j) for a bounding pair (i, j).
struct SimpleTwistVector {
  DisjointSystem system;
  std::vector<std::int64_t> vector;

  /// Indices into system.classes with nonzero entries.
  std::vector<int> support() const;
  friend bool operator==(const SimpleTwistVector&, const SimpleTwistVector&) = default;
};

SimpleTwistVector separating_twist(const CurveInventory& inv, const DisjointSystem& s, int i,
                                   std::int64_t n = 1);
SimpleTwistVector bounding_pair_twist(const CurveInventory& inv, const DisjointSystem& s, int i,
                                      int j, std::int64_t n = 1);

/// Nonzero diagonal entries of the Smith normal form.
std::vector<std::int64_t> smith_invariants(IntMatrix m);
/// Rank of the integer lattice spanned by the rows.
int lattice_rank(const IntMatrix& rows);
/// Rank of the subgroup generated by the twist powers; throws
/// std::invalid_argument for vectors on different systems.
int subgroup_rank(const std::vector<SimpleTwistVector>& vs);

/// Triple rank 2 and every pair rank 2.
bool rank_conditions(const std::array<SimpleTwistVector, 3>& t);
/// The three bounding-pair twists of a marked triangle, to the given powers.
std::array<SimpleTwistVector, 3> marked_triangle_twists(const TorelliComplex& c, int triangle,
                                                        const std::array<std::int64_t, 3>& powers);
bool verify_marked_triangle_rank(const TorelliComplex& c, int triangle,
                                 const std::array<std::int64_t, 3>& powers);

/// All simple twists (unit powers) supported on one disjoint system.
std::vector<SimpleTwistVector> simple_twists_on(const CurveInventory& inv,
                                                const std::vector<int>& system);

/// Support of a simple twist as sorted inventory indices.
std::vector<int> support_curves(const SimpleTwistVector& v);

/// Witness (g, h) for f: simple twists with supports distinct from f's and
/// from each other such that f, g, h span a rank-2 lattice. Searches every
/// maximal disjoint system of the inventory containing f's support.
std::optional<std::pair<SimpleTwistVector, SimpleTwistVector>> bp_criterion_search(
    const SimpleTwistVector& f, const CurveInventory& inv);

struct AbelianRankReport {
  int max_rank = 0;
  std::size_t systems = 0;
  std::vector<int> witness;  // a maximal system attaining max_rank
};

/// Maximum rank of the subgroup generated by all simple twists on a maximal
/// disjoint system; restricted to systems containing the support of
/// must_contain when given.
AbelianRankReport max_abelian_rank(const CurveInventory& inv,
                                   const std::optional<SimpleTwistVector>& must_contain = {});

struct PropsParams {
  std::size_t power_samples = 20;       // power triples per marked triangle
  std::size_t non_marked_samples = 2000;  // bounding-pair triples off triangles
  bool scan_systems = true;  // P5.2 and P6 need every maximal system
  std::uint64_t seed = 0;
  int jobs = 1;
};

/// Verification report keyed by "P5.2", "P6" and "P7".
nlohmann::json props_report(const TorelliComplex& c, const PropsParams& params);

}  // namespace torelli
