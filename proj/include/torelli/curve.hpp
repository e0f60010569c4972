#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "torelli/surface.hpp"

namespace torelli {

class CurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed walk in the dual ribbon graph, recorded as the sequence of exit
/// sides; the walk enters triangle(glued(out[k])) before exiting out[k + 1].
using Walk = std::vector<SideId>;

using SurfacePtr = std::shared_ptr<const Triangulation>;
using HomologyVector = std::vector<std::int64_t>;

bool is_closed_walk(const Triangulation& t, const Walk& w);
Walk reverse_walk(const Triangulation& t, const Walk& w);
/// Cancels backtracks, including across the cyclic seam.
Walk reduce_walk(const Triangulation& t, const Walk& w);
std::vector<int> walk_weights(const Triangulation& t, const Walk& w);

/// Weights that satisfy parity and the triangle inequalities in every triangle.
bool is_normal_weights(const Triangulation& t, const std::vector<int>& w);

/// Traversal of the normal multicurve with the given weights. Weights that
/// only satisfy the parity condition are traced with returning arcs.
struct Tracing {
  std::vector<Walk> walks;
  std::vector<std::pair<int, int>> starts;  // (edge, position on agreeing side)
  std::vector<int> offset;                  // first point id of each edge
  std::vector<int> label;                   // component of each point
};
Tracing trace_weights(const Triangulation& t, const std::vector<int>& w);

/// Isotopy class of an essential simple closed curve, stored as normal
/// coordinates plus a canonical positively oriented traversal.
class NormalCurve {
 public:
  NormalCurve() = default;

  /// Strict constructor: w must already be the normal coordinates of a
  /// single essential curve.
  static NormalCurve from_weights(SurfacePtr surface, std::vector<int> w);

  const Triangulation& surface() const { return *surface_; }
  const SurfacePtr& surface_ptr() const { return surface_; }
  const std::vector<int>& weights() const { return weights_; }
  const Walk& walk() const { return walk_; }
  int total_weight() const;
  bool valid() const { return surface_ != nullptr; }

  nlohmann::json to_json() const;
  static NormalCurve from_json(SurfacePtr surface, const nlohmann::json& j);

  friend bool operator==(const NormalCurve& a, const NormalCurve& b) {
    return a.weights_ == b.weights_;
  }
  friend bool operator<(const NormalCurve& a, const NormalCurve& b) {
    return a.weights_ < b.weights_;
  }

 private:
  SurfacePtr surface_;
  std::vector<int> weights_;
  Walk walk_;
};

/// Normal form of a weight vector that may contain bigons or trivial
/// components. Throws CurveError for inessential or multi-component input.
NormalCurve normalize(SurfacePtr surface, const std::vector<int>& raw);
/// Normal form of a closed (possibly unreduced) walk.
NormalCurve normalize_path(SurfacePtr surface, const Walk& raw);

struct OrientedCurve {
  NormalCurve curve;
  bool reversed = false;

  Walk walk() const;
  OrientedCurve opposite() const { return {curve, !reversed}; }
};

/// A maximal common subpath of two walks (the second possibly reversed).
struct SharedSegment {
  int i = 0;       // start index in the first walk
  int j = 0;       // start index in the (reversed) second walk
  int length = 0;  // number of shared exits
  bool reversed = false;
  bool upper = false;  // first walk enters from the counterclockwise-next side
  bool linked = false;
};
std::vector<SharedSegment> shared_segments(const Triangulation& t, const Walk& a, const Walk& b);

int geometric_intersection(const NormalCurve& a, const NormalCurve& b);
int algebraic_intersection(const OrientedCurve& a, const OrientedCurve& b);
/// Essential self-crossings of a reduced closed walk.
int self_intersection(const Triangulation& t, const Walk& w);

HomologyVector homology_class(const OrientedCurve& c);
HomologyVector homology_class(const NormalCurve& c);
HomologyVector walk_homology(const Triangulation& t, const Walk& w);
/// x^T J y in the standard symplectic basis.
std::int64_t symplectic_pairing(const HomologyVector& x, const HomologyVector& y);

bool is_separating(const NormalCurve& c);

/// Exact disjointness test for distinct curves: the normal multicurve with
/// the summed weights splits into the two curves.
bool disjoint(const NormalCurve& a, const NormalCurve& b);
/// Same test tracing every component; reference for disjoint().
bool disjoint_by_full_trace(const NormalCurve& a, const NormalCurve& b);

struct ComplementComponent {
  int genus = 0;
  int boundary = 0;
  int euler = 0;
  friend bool operator==(const ComplementComponent&, const ComplementComponent&) = default;
};

struct ComplementProfile {
  std::vector<ComplementComponent> components;
  std::size_t count() const { return components.size(); }
  bool has_annulus() const;
  nlohmann::json to_json() const;
};

/// Pieces of the closed surface cut along pairwise disjoint curves.
ComplementProfile cut_components(const std::vector<NormalCurve>& curves);

/// Distinct disjoint curves that cobound an annulus in the closed surface,
/// i.e. differ only in how they pass around the vertex.
bool is_parallel(const NormalCurve& a, const NormalCurve& b);

bool is_bounding_pair(const NormalCurve& a, const NormalCurve& b);

/// Genera {h, g - h} of the two sides, smaller first.
std::pair<int, int> separating_genus(const NormalCurve& c);
bool is_genus_one_separating(const NormalCurve& c);

}  // namespace torelli
