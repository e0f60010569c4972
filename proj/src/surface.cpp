#include "torelli/surface.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "torelli/util.hpp"

namespace torelli {

Triangulation::Triangulation(int genus, int num_edges, std::vector<int> side_edge,
                             std::vector<int> side_sign, std::vector<SideId> gluing,
                             std::vector<int> polygon_word)
    : genus_(genus),
      num_edges_(num_edges),
      side_edge_(std::move(side_edge)),
      side_sign_(std::move(side_sign)),
      gluing_(std::move(gluing)),
      polygon_word_(std::move(polygon_word)) {
  if (side_edge_.size() % 3 != 0 || side_sign_.size() != side_edge_.size() ||
      gluing_.size() != side_edge_.size()) {
    throw SurfaceError("triangulation arrays must have matching length divisible by 3");
  }
  for (int e : side_edge_) {
    if (e < 0 || e >= num_edges_) throw SurfaceError("side refers to unknown edge");
  }
  for (SideId s : gluing_) {
    if (s < -1 || s >= num_sides()) throw SurfaceError("gluing refers to unknown side");
  }
  index();
}

void Triangulation::index() {
  edge_sides_.assign(num_edges_, {-1, -1});
  for (SideId s = 0; s < num_sides(); ++s) {
    auto& slots = edge_sides_[edge(s)];
    int k = sign(s) > 0 ? 0 : 1;
    if (slots[k] < 0) slots[k] = s;
  }
  link_.clear();
  link_pos_.assign(2 * num_edges_, -1);
  if (num_sides() == 0 || num_vertices() != 1) return;
  for (SideId s : gluing_) {
    if (s < 0) return;
  }
  SideId s = 0;
  do {
    EdgeEnd end = start_end(s);
    link_pos_[2 * end.edge + (end.tail ? 0 : 1)] = static_cast<int>(link_.size());
    link_.push_back(end);
    s = glued(ccw_prev(s));
  } while (s != 0 && link_.size() <= static_cast<std::size_t>(num_sides()));
}

int Triangulation::num_vertices() const {
  // Corner 3t + k sits at vertex v_k of triangle t.
  DisjointSets corners(num_sides());
  for (SideId s = 0; s < num_sides(); ++s) {
    SideId o = glued(s);
    if (o < 0) continue;
    int t = triangle(s), k = slot(s);
    int to = triangle(o), ko = slot(o);
    corners.unite(3 * t + k, 3 * to + (ko + 1) % 3);
    corners.unite(3 * t + (k + 1) % 3, 3 * to + ko);
  }
  return corners.count();
}

int Triangulation::link_position(EdgeEnd end) const {
  int p = link_pos_.at(2 * end.edge + (end.tail ? 0 : 1));
  if (p < 0) throw SurfaceError("vertex link unavailable");
  return p;
}

SideId Triangulation::polygon_side(int k) const {
  int n = polygon_size();
  if (k < 0 || k >= n) throw SurfaceError("polygon side out of range");
  if (k == 0) return 0;
  if (k == n - 1) return 3 * (n - 3) + 2;
  return 3 * (k - 1) + 1;
}

nlohmann::json Triangulation::to_json() const {
  nlohmann::json tris = nlohmann::json::array();
  for (int t = 0; t < num_triangles(); ++t) {
    nlohmann::json tri = nlohmann::json::array();
    for (int k = 0; k < 3; ++k) tri.push_back({edge(3 * t + k), sign(3 * t + k)});
    tris.push_back(tri);
  }
  nlohmann::json glue = nlohmann::json::array();
  for (SideId s = 0; s < num_sides(); ++s) {
    if (glued(s) > s) glue.push_back({s, glued(s)});
  }
  return {{"schema", "torelli.triangulation"},
          {"schema_version", 1},
          {"genus", genus_},
          {"num_edges", num_edges_},
          {"triangles", tris},
          {"gluings", glue},
          {"polygon_word", polygon_word_}};
}

Triangulation Triangulation::from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "torelli.triangulation" || j.value("schema_version", 0) != 1) {
    throw SurfaceError("unsupported triangulation schema");
  }
  const auto& tris = j.at("triangles");
  std::vector<int> side_edge, side_sign;
  for (const auto& tri : tris) {
    if (tri.size() != 3) throw SurfaceError("triangle must have three sides");
    for (const auto& side : tri) {
      side_edge.push_back(side.at(0).get<int>());
      side_sign.push_back(side.at(1).get<int>());
    }
  }
  std::vector<SideId> gluing(side_edge.size(), -1);
  for (const auto& pair : j.at("gluings")) {
    SideId a = pair.at(0).get<int>(), b = pair.at(1).get<int>();
    if (a < 0 || b < 0 || a >= static_cast<int>(gluing.size()) ||
        b >= static_cast<int>(gluing.size())) {
      throw SurfaceError("gluing refers to unknown side");
    }
    gluing[a] = b;
    gluing[b] = a;
  }
  return Triangulation(j.at("genus").get<int>(), j.at("num_edges").get<int>(),
                       std::move(side_edge), std::move(side_sign), std::move(gluing),
                       j.value("polygon_word", std::vector<int>{}));
}

std::uint64_t Triangulation::hash() const { return fnv1a(to_json().dump()); }

std::string Triangulation::hash_hex() const { return hex64(hash()); }

Triangulation polygon_surface(const std::vector<int>& word, int genus) {
  const int n = static_cast<int>(word.size());
  if (n < 4 || n % 2 != 0) throw SurfaceError("polygon word needs an even number >= 4 of sides");
  const int letters = n / 2;
  std::vector<std::vector<int>> occurrences(letters);
  for (int k = 0; k < n; ++k) {
    int letter = std::abs(word[k]) - 1;
    if (word[k] == 0 || letter >= letters) throw SurfaceError("polygon letter out of range");
    occurrences[letter].push_back(k);
  }
  for (const auto& occ : occurrences) {
    if (occ.size() != 2) throw SurfaceError("each polygon letter must occur exactly twice");
  }
  const int triangles = n - 2;
  std::vector<int> side_edge(3 * triangles), side_sign(3 * triangles);
  std::vector<SideId> gluing(3 * triangles, -1);
  auto polygon_side = [&](int k) {
    if (k == 0) return 0;
    if (k == n - 1) return 3 * (n - 3) + 2;
    return 3 * (k - 1) + 1;
  };
  for (int k = 1; k <= n - 2; ++k) {
    int t = k - 1;
    if (k > 1) {
      side_edge[3 * t] = letters + (k - 2);
      side_sign[3 * t] = 1;
    }
    if (k < n - 2) {
      side_edge[3 * t + 2] = letters + (k - 1);
      side_sign[3 * t + 2] = -1;
      gluing[3 * t + 2] = 3 * (t + 1);
      gluing[3 * (t + 1)] = 3 * t + 2;
    }
  }
  for (int k = 0; k < n; ++k) {
    SideId s = polygon_side(k);
    side_edge[s] = std::abs(word[k]) - 1;
    side_sign[s] = word[k] > 0 ? 1 : -1;
  }
  for (const auto& occ : occurrences) {
    SideId a = polygon_side(occ[0]), b = polygon_side(occ[1]);
    gluing[a] = b;
    gluing[b] = a;
  }
  return Triangulation(genus, letters + (n - 3), std::move(side_edge), std::move(side_sign),
                       std::move(gluing), word);
}

Triangulation build_closed_surface(int genus) {
  if (genus < 2) throw SurfaceError("genus must be at least 2");
  std::vector<int> word;
  for (int i = 0; i < genus; ++i) {
    int a = 2 * i + 1, b = 2 * i + 2;
    word.insert(word.end(), {a, b, -a, -b});
  }
  return polygon_surface(word, genus);
}

std::vector<std::string> validate(const Triangulation& t) {
  std::vector<std::string> report;
  auto say = [&](const std::string& msg) { report.push_back(msg); };
  if (t.num_sides() == 0) {
    say("triangulation has no triangles");
    return report;
  }
  std::vector<int> incidence(t.num_edges(), 0);
  for (SideId s = 0; s < t.num_sides(); ++s) {
    ++incidence[t.edge(s)];
    if (t.sign(s) != 1 && t.sign(s) != -1) say("side " + std::to_string(s) + " has invalid sign");
    SideId o = t.glued(s);
    if (o < 0) {
      say("side " + std::to_string(s) + " is not glued (dangling edge side)");
      continue;
    }
    if (o == s || t.glued(o) != s) {
      say("gluing is not an involution at side " + std::to_string(s));
      continue;
    }
    if (s < o) {
      if (t.edge(s) != t.edge(o)) {
        say("glued sides " + std::to_string(s) + " and " + std::to_string(o) +
            " carry different edges");
      } else if (t.sign(s) == t.sign(o)) {
        say("glued sides " + std::to_string(s) + " and " + std::to_string(o) +
            " induce inconsistent orientation");
      }
    }
  }
  for (int e = 0; e < t.num_edges(); ++e) {
    if (incidence[e] != 2) {
      say("edge " + std::to_string(e) + " has " + std::to_string(incidence[e]) +
          " incident sides (expected 2)");
    }
  }
  const int g = t.genus();
  const int v = t.num_vertices();
  if (v != 1) say("vertex count " + std::to_string(v) + " (expected 1)");
  if (g < 1) say("genus " + std::to_string(g) + " is not positive");
  if (t.num_triangles() != 4 * g - 2) {
    say("face count " + std::to_string(t.num_triangles()) + " (expected " +
        std::to_string(4 * g - 2) + ")");
  }
  if (t.num_edges() != 6 * g - 3) {
    say("edge count " + std::to_string(t.num_edges()) + " (expected " +
        std::to_string(6 * g - 3) + ")");
  }
  int chi = t.euler_characteristic();
  if (chi != 2 - 2 * g) {
    say("Euler characteristic " + std::to_string(chi) + " does not match genus " +
        std::to_string(g));
  }
  return report;
}

std::vector<std::vector<std::int64_t>> standard_symplectic(int genus) {
  std::vector<std::vector<std::int64_t>> j(2 * genus, std::vector<std::int64_t>(2 * genus, 0));
  for (int i = 0; i < genus; ++i) {
    j[2 * i][2 * i + 1] = 1;
    j[2 * i + 1][2 * i] = -1;
  }
  return j;
}

namespace {

// Strictly counterclockwise between `from` and `to` in a cycle of length n.
bool strictly_between(int x, int from, int to, int n) {
  int dx = ((x - from) % n + n) % n;
  int dt = ((to - from) % n + n) % n;
  return dx > 0 && dx < dt;
}

}  // namespace

int loop_pairing_at_vertex(const Triangulation& t, EdgeCycle e, EdgeCycle f) {
  if (e.edge == f.edge) return 0;
  const int n = static_cast<int>(t.vertex_link().size());
  int te = t.link_position({e.edge, e.direction > 0});
  int he = t.link_position({e.edge, e.direction < 0});
  int tf = t.link_position({f.edge, f.direction > 0});
  int hf = t.link_position({f.edge, f.direction < 0});
  bool tf_left = strictly_between(tf, te, he, n);
  bool hf_left = strictly_between(hf, te, he, n);
  if (tf_left && !hf_left) return 1;
  if (hf_left && !tf_left) return -1;
  return 0;
}

std::vector<SideId> left_pushoff_walk(const Triangulation& t, EdgeCycle e) {
  SideId s = t.sides_of_edge(e.edge)[e.direction > 0 ? 0 : 1];
  const SideId entry = Triangulation::ccw_prev(s);
  std::vector<SideId> walk;
  SideId out = Triangulation::ccw_next(s);
  walk.push_back(out);
  while (t.glued(out) != entry) {
    out = Triangulation::ccw_next(t.glued(out));
    walk.push_back(out);
    if (walk.size() > static_cast<std::size_t>(t.num_sides())) {
      throw SurfaceError("push-off walk does not close");
    }
  }
  return walk;
}

int loop_pairing_by_pushoff(const Triangulation& t, EdgeCycle e, EdgeCycle f) {
  int total = 0;
  for (SideId out : left_pushoff_walk(t, e)) {
    if (t.edge(out) == f.edge) total += t.sign(out) * f.direction;
  }
  return total;
}

HomologyBasis homology_basis(const Triangulation& t) {
  if (t.polygon_size() != 4 * t.genus()) {
    throw SurfaceError("homology basis needs the canonical polygon model");
  }
  HomologyBasis basis;
  for (int i = 0; i < t.genus(); ++i) {
    basis.cycles.push_back({2 * i, 1});
    basis.cycles.push_back({2 * i + 1, 1});
  }
  const std::size_t n = basis.cycles.size();
  basis.pairing.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      basis.pairing[r][c] = loop_pairing_at_vertex(t, basis.cycles[r], basis.cycles[c]);
    }
  }
  return basis;
}

std::int64_t determinant(std::vector<std::vector<std::int64_t>> m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace torelli
