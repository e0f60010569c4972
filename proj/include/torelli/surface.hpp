#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace torelli {

/// Index of a triangle side: 3 * triangle + slot, slot in {0, 1, 2}.
/// Slot k runs from corner k to corner k + 1, counterclockwise.
using SideId = int;

class SurfaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One end of an edge at the (single) vertex.
struct EdgeEnd {
  int edge = -1;
  bool tail = true;
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

/// Oriented edge loop used as a homology cycle.
struct EdgeCycle {
  int edge = -1;
  int direction = 1;  // +1 follows the stored edge direction
  friend bool operator==(const EdgeCycle&, const EdgeCycle&) = default;
};

/// Combinatorial closed surface: triangles with counterclockwise side slots,
/// each side labelled by an undirected edge plus a sign telling whether the
/// counterclockwise direction agrees with the edge direction, and a gluing
/// involution on sides.
///
/// Instances built by build_closed_surface() additionally remember the
/// polygon word of the canonical 4g-gon model; the standard curves and the
/// homology basis are read from it.
class Triangulation {
 public:
  Triangulation() = default;

  /// Raw constructor; performs no validation (see validate()).
  Triangulation(int genus, int num_edges, std::vector<int> side_edge,
                std::vector<int> side_sign, std::vector<SideId> gluing,
                std::vector<int> polygon_word = {});

  int genus() const { return genus_; }
  int num_triangles() const { return static_cast<int>(side_edge_.size()) / 3; }
  int num_edges() const { return num_edges_; }
  int num_sides() const { return static_cast<int>(side_edge_.size()); }
  int num_vertices() const;
  int euler_characteristic() const {
    return num_vertices() - num_edges() + num_triangles();
  }

  int edge(SideId s) const { return side_edge_[s]; }
  /// +1 when the counterclockwise direction of the side equals the edge direction.
  int sign(SideId s) const { return side_sign_[s]; }
  /// The side glued to s, or -1 for a dangling side.
  SideId glued(SideId s) const { return gluing_[s]; }
  static int triangle(SideId s) { return s / 3; }
  static int slot(SideId s) { return s % 3; }
  static SideId ccw_next(SideId s) { return 3 * (s / 3) + (s % 3 + 1) % 3; }
  static SideId ccw_prev(SideId s) { return 3 * (s / 3) + (s % 3 + 2) % 3; }

  /// The two sides carrying an edge: [0] agrees with the edge direction.
  std::array<SideId, 2> sides_of_edge(int e) const { return edge_sides_[e]; }

  /// Edge end at the start corner of side s.
  EdgeEnd start_end(SideId s) const { return {edge(s), sign(s) > 0}; }

  /// Edge ends around the vertex in counterclockwise order (length 2E).
  /// Requires a one-vertex triangulation.
  const std::vector<EdgeEnd>& vertex_link() const { return link_; }
  /// Position of an edge end inside vertex_link().
  int link_position(EdgeEnd end) const;

  /// Polygon word of the canonical model: entry +-(letter + 1) per polygon
  /// side; empty when the triangulation was not built from a polygon.
  const std::vector<int>& polygon_word() const { return polygon_word_; }
  /// Side id of polygon side k (canonical model only).
  SideId polygon_side(int k) const;
  int polygon_size() const { return static_cast<int>(polygon_word_.size()); }

  nlohmann::json to_json() const;
  static Triangulation from_json(const nlohmann::json& j);
  /// FNV-1a hash of the canonical JSON text.
  std::uint64_t hash() const;
  std::string hash_hex() const;

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.genus_ == b.genus_ && a.num_edges_ == b.num_edges_ &&
           a.side_edge_ == b.side_edge_ && a.side_sign_ == b.side_sign_ &&
           a.gluing_ == b.gluing_ && a.polygon_word_ == b.polygon_word_;
  }

 private:
  void index();

  int genus_ = 0;
  int num_edges_ = 0;
  std::vector<int> side_edge_;
  std::vector<int> side_sign_;
  std::vector<SideId> gluing_;
  std::vector<int> polygon_word_;
  std::vector<std::array<SideId, 2>> edge_sides_;
  std::vector<EdgeEnd> link_;
  std::vector<int> link_pos_;  // 2 * edge + (tail ? 0 : 1)
};

/// Fan triangulation of a polygon whose sides are labelled by `word`
/// (entries +-(letter + 1)); polygon corner 0 is the fan apex.
/// Edge ids: letters first, then diagonals (0, k) for k = 2 .. n - 2.
Triangulation polygon_surface(const std::vector<int>& word, int genus);

/// Canonical one-vertex triangulation of the closed genus-g surface from the
/// 4g-gon a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1.
Triangulation build_closed_surface(int genus);

/// Every violated invariant, one message per line; empty iff valid.
std::vector<std::string> validate(const Triangulation& t);

/// Standard symplectic form on Z^2g in the basis a1, b1, ..., ag, bg.
std::vector<std::vector<std::int64_t>> standard_symplectic(int genus);

struct HomologyBasis {
  std::vector<EdgeCycle> cycles;  // a1, b1, a2, b2, ...
  std::vector<std::vector<std::int64_t>> pairing;
};

/// Basis of polygon-side loops; pairing computed from the cyclic order of
/// edge ends at the vertex.
HomologyBasis homology_basis(const Triangulation& t);

/// Algebraic intersection of two edge loops from the interleaving of their
/// ends at the vertex.
int loop_pairing_at_vertex(const Triangulation& t, EdgeCycle e, EdgeCycle f);

/// Closed walk (list of exit sides) of the normal curve parallel to an edge
/// loop on its left, oriented like the loop.
std::vector<SideId> left_pushoff_walk(const Triangulation& t, EdgeCycle e);

/// Algebraic intersection of two edge loops counted as signed crossings of
/// the left push-off of e with f.
int loop_pairing_by_pushoff(const Triangulation& t, EdgeCycle e, EdgeCycle f);

std::int64_t determinant(std::vector<std::vector<std::int64_t>> m);

}  // namespace torelli
