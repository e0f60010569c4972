#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "torelli/inventory.hpp"

namespace torelli {

/// Undirected simple graph on vertices 0 .. n - 1 with sorted adjacency.
struct Graph {
  std::vector<std::vector<int>> adj;

  std::size_t size() const { return adj.size(); }
  std::size_t num_edges() const;
  bool adjacent(int u, int v) const;
};

struct ComponentReport {
  std::vector<int> component;  // component id per vertex
  std::vector<int> sizes;      // sorted descending
  std::size_t count() const { return sizes.size(); }
};

ComponentReport connected_components(const Graph& g);
/// Vertex sequence of a shortest path, or nullopt if none.
std::optional<std::vector<int>> shortest_path(const Graph& g, int u, int v);
/// Largest eccentricity over all vertices of the largest component.
int diameter(const Graph& g, int jobs = 1);

enum class VertexKind { Separating, BoundingPair };

struct TGVertex {
  VertexKind kind = VertexKind::Separating;
  int a = -1;  // inventory curve index
  int b = -1;  // second curve of a bounding pair (a < b)

  std::vector<int> curves() const {
    return kind == VertexKind::Separating ? std::vector<int>{a} : std::vector<int>{a, b};
  }
  friend bool operator==(const TGVertex&, const TGVertex&) = default;
};

/// Finite induced piece of the Torelli geometry over an inventory.
class TorelliComplex {
 public:
  TorelliComplex(const CurveInventory& inv, int jobs = 1);

  const CurveInventory& inventory() const { return *inv_; }
  const std::vector<TGVertex>& vertices() const { return vertices_; }
  const Graph& graph() const { return graph_; }
  /// Vertex triples (sorted) of marked triangles.
  const std::vector<std::array<int, 3>>& marked_triangles() const { return marked_; }
  /// Curve triples (sorted) underlying the marked triangles.
  const std::vector<std::array<int, 3>>& triangle_curves() const { return triangle_curves_; }

  /// Vertex index of a separating curve / bounding pair, or -1.
  int separating_vertex(int curve) const;
  int bounding_pair_vertex(int c1, int c2) const;
  /// Marked triangles (indices into marked_triangles()) containing vertex v.
  const std::vector<int>& triangles_at(int v) const { return triangles_at_[v]; }

  bool adjacent(int u, int v) const { return graph_.adjacent(u, v); }
  std::size_t num_separating() const;
  std::size_t num_bounding_pairs() const;

  nlohmann::json to_json() const;
  std::string to_dot() const;

 private:
  const CurveInventory* inv_;
  std::vector<TGVertex> vertices_;
  Graph graph_;
  std::vector<std::array<int, 3>> marked_;
  std::vector<std::array<int, 3>> triangle_curves_;
  std::vector<std::vector<int>> triangles_at_;
  std::vector<int> sep_vertex_;
  std::map<std::pair<int, int>, int> bp_vertex_;
};

/// True iff the three vertices are bounding pairs on exactly three pairwise
/// disjoint nonseparating classes {c1, c2}, {c2, c3}, {c3, c1}.
bool detect_marked_triangle(const CurveInventory& inv, const TGVertex& v1, const TGVertex& v2,
                            const TGVertex& v3);

/// Disjointness graph on the separating curves (optionally genus one only).
struct SeparatingComplex {
  std::vector<int> curves;  // inventory indices
  Graph graph;
  bool genus_one_only = false;

  nlohmann::json to_json(const CurveInventory& inv) const;
  std::string to_dot(const CurveInventory& inv) const;
};

SeparatingComplex build_tgs(const CurveInventory& inv, bool genus_one_only);

/// Adds, for every bounding pair of the inventory without a separating
/// curve disjoint from both, the band-sum separating curve of the pair.
/// Added curves carry depth L + 1.
CurveInventory complete_links(const CurveInventory& inv, int jobs = 1);

/// Bounding pairs among inventory curves (index pairs, a < b).
std::vector<std::pair<int, int>> bounding_pairs(const CurveInventory& inv, int jobs = 1);

/// Maximal pairwise-disjoint systems, each sorted; at most `limit` systems
/// are listed. `must_contain` restricts to systems containing those curves.
struct DisjointSystems {
  std::vector<std::vector<int>> systems;
  std::size_t total = 0;  // maximal systems found (may exceed systems.size())
  std::size_t max_size = 0;
};
DisjointSystems max_disjoint_systems(const CurveInventory& inv,
                                     const std::vector<int>& must_contain = {},
                                     std::size_t limit = 1000);

/// Recomputes vertex types, adjacency (every edge and a seeded sample of
/// non-edges) and marked triangles; returns mismatch descriptions.
std::vector<std::string> verify_complex(const TorelliComplex& c, std::uint64_t seed,
                                        std::size_t non_edge_samples = 2000);
std::vector<std::string> verify_complex(const CurveInventory& inv, const SeparatingComplex& c,
                                        std::uint64_t seed, std::size_t non_edge_samples = 2000);

/// Calls fn on every maximal pairwise-disjoint system (unsorted) containing
/// must_contain; returns the number of systems visited.
std::size_t for_each_maximal_system(const CurveInventory& inv, const std::vector<int>& must_contain,
                                    const std::function<void(const std::vector<int>&)>& fn);

/// Components summary used by connectivity reports.
nlohmann::json component_report_json(const Graph& g, int jobs = 1);

}  // namespace torelli
