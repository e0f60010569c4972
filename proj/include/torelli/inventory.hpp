#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "torelli/curve.hpp"
#include "torelli/util.hpp"

namespace torelli {

struct InventoryCurve {
  NormalCurve curve;
  HomologyVector homology;  // positive orientation
  bool separating = false;
  int separating_genus = 0;  // smaller side; 0 for nonseparating curves
  int depth = 0;             // shortest word length reaching the curve
  /// Other representatives of the same closed-surface class, parallel to
  /// `curve` across the vertex.
  std::vector<NormalCurve> copies;
};

struct EnumerationParams {
  std::vector<NormalCurve> seeds;
  std::vector<NormalCurve> generators;
  int depth = 0;
  int weight_cap = 0;
  std::uint64_t seed = 0;
  std::size_t max_configurations = 1000000;
  int jobs = 1;
};

struct Provenance {
  int num_seeds = 0;
  int num_generators = 0;
  int depth = 0;
  int weight_cap = 0;
  std::uint64_t seed = 0;
  std::size_t configurations = 0;
  bool exhaustive = true;
  int parallel_merged = 0;
  int completion_curves = 0;  // separating curves added by link completion
  nlohmann::json to_json() const;
  static Provenance from_json(const nlohmann::json& j);
};

/// Deduplicated finite set of curves with cached invariants and the
/// pairwise disjointness relation.
class CurveInventory {
 public:
  CurveInventory() = default;
  /// Sorts, caches invariants, computes disjointness and merges curves that
  /// are parallel in the closed surface (keeping the lightest copy).
  CurveInventory(SurfacePtr surface, std::vector<std::pair<NormalCurve, int>> curves,
                 Provenance provenance, int jobs = 1);

  const SurfacePtr& surface_ptr() const { return surface_; }
  const Triangulation& surface() const { return *surface_; }
  int genus() const { return surface_->genus(); }
  std::size_t size() const { return curves_.size(); }
  const InventoryCurve& operator[](std::size_t i) const { return curves_[i]; }
  const std::vector<InventoryCurve>& curves() const { return curves_; }
  const Provenance& provenance() const { return provenance_; }

  /// Some representatives of the two classes are disjoint.
  bool disjoint(int i, int j) const { return i == j || disjoint_[i].test(j); }
  const BitRow& disjoint_row(int i) const { return disjoint_[i]; }
  /// Index of the class with a representative of these weights, or -1.
  int index_of(const NormalCurve& c) const;

  /// Recomputes every cached invariant; returns mismatch descriptions.
  std::vector<std::string> verify(int jobs = 1) const;

  nlohmann::json to_json() const;
  static CurveInventory from_json(SurfacePtr surface, const nlohmann::json& j, int jobs = 1);

 private:
  void compute_disjointness(int jobs);

  SurfacePtr surface_;
  std::vector<InventoryCurve> curves_;
  Provenance provenance_;
  std::vector<BitRow> disjoint_;
  std::map<std::vector<int>, int> index_;
};

InventoryCurve describe_curve(const NormalCurve& c, int depth = 0);

/// Closure of the seed configuration under twist words in the generators of
/// length <= depth. Words act on the whole configuration, so disjointness
/// among seeds is inherited; configurations containing a curve heavier than
/// the weight cap are pruned.
CurveInventory enumerate_curves(const SurfacePtr& surface, const EnumerationParams& params);

}  // namespace torelli
