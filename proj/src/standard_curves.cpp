#include "torelli/standard_curves.hpp"

#include <algorithm>
#include <optional>

namespace torelli {

namespace {

void require_model(const Triangulation& t) {
  if (t.polygon_size() != 4 * t.genus()) {
    throw CurveError("standard curves need the canonical polygon model");
  }
}

void require_handle(const Triangulation&, int i, int limit) {
  if (i < 0 || i >= limit) throw CurveError("handle index out of range");
}

int diagonal_edge(const Triangulation& t, int k) { return t.polygon_size() / 2 + (k - 2); }

Walk loop_from(const Walk& w, int start) {
  Walk out;
  const int m = static_cast<int>(w.size());
  for (int k = 0; k < m; ++k) out.push_back(w[(start + k) % m]);
  return out;
}

Walk inverse_loop_from(const Triangulation& t, const Walk& w, int start) {
  Walk out;
  const int m = static_cast<int>(w.size());
  for (int k = 1; k <= m; ++k) out.push_back(t.glued(w[((start - k) % m + m) % m]));
  return out;
}

bool any_of_nonzero(const HomologyVector& v) {
  return std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
}

}  // namespace

Walk chord_walk(const Triangulation& t, int from, int to) {
  require_model(t);
  const int ta = Triangulation::triangle(t.polygon_side(from));
  const int tb = Triangulation::triangle(t.polygon_side(to));
  Walk w;
  for (int tri = ta; tri < tb; ++tri) w.push_back(3 * tri + 2);
  for (int tri = ta; tri > tb; --tri) w.push_back(3 * tri);
  w.push_back(t.polygon_side(to));
  return w;
}

NormalCurve alpha_curve(const SurfacePtr& s, int i) {
  require_handle(*s, i, s->genus());
  return normalize_path(s, chord_walk(*s, 4 * i + 1, 4 * i + 3));
}

NormalCurve beta_curve(const SurfacePtr& s, int i) {
  require_handle(*s, i, s->genus());
  return normalize_path(s, chord_walk(*s, 4 * i, 4 * i + 2));
}

NormalCurve gamma_curve(const SurfacePtr& s, int i) {
  require_handle(*s, i, s->genus() - 1);
  Walk w = chord_walk(*s, 4 * i + 2, 4 * i + 4);
  Walk back = chord_walk(*s, 4 * i + 6, 4 * i);
  w.insert(w.end(), back.begin(), back.end());
  return normalize_path(s, w);
}

NormalCurve edge_pushoff(const SurfacePtr& s, EdgeCycle e) {
  return normalize_path(s, left_pushoff_walk(*s, e));
}

NormalCurve diagonal_pushoff(const SurfacePtr& s, int x, int y) {
  const Triangulation& t = *s;
  require_model(t);
  if (x < 0 || y < x + 2 || y >= t.polygon_size()) throw CurveError("diagonal out of range");
  if (x == 0) return edge_pushoff(s, {diagonal_edge(t, y), 1});
  // Triangle T_k of the fan (corners P0, P_k, P_k+1) has index k - 1.
  Walk w;
  for (int k = x; k < y; ++k) w.push_back(3 * (k - 1) + 2);
  const SideId stop = 3 * (x - 1);
  SideId out = w.back();
  while (t.glued(out) != stop) {
    out = Triangulation::ccw_next(t.glued(out));
    w.push_back(out);
    if (static_cast<int>(w.size()) > 2 * t.num_sides()) throw CurveError("push-off does not close");
  }
  return normalize_path(s, w);
}

NormalCurve commutator_curve(const NormalCurve& a, const NormalCurve& b) {
  const Triangulation& t = a.surface();
  for (const auto& seg : shared_segments(t, a.walk(), b.walk())) {
    if (!seg.linked) continue;
    const Walk bb = seg.reversed ? reverse_walk(t, b.walk()) : b.walk();
    Walk w = loop_from(a.walk(), seg.i);
    Walk part = loop_from(bb, seg.j);
    w.insert(w.end(), part.begin(), part.end());
    part = inverse_loop_from(t, a.walk(), seg.i);
    w.insert(w.end(), part.begin(), part.end());
    part = inverse_loop_from(t, bb, seg.j);
    w.insert(w.end(), part.begin(), part.end());
    return normalize_path(a.surface_ptr(), w);
  }
  throw CurveError("commutator curve needs crossing curves");
}

std::optional<NormalCurve> band_sum_separating(const NormalCurve& a, const NormalCurve& b) {
  const Triangulation& t = a.surface();
  const int nt = t.num_triangles();
  // Shortest dual paths between triangles, as exit-side sequences.
  std::vector<std::vector<SideId>> parent(nt, std::vector<SideId>(nt, -1));
  for (int src = 0; src < nt; ++src) {
    std::vector<int> queue{src};
    std::vector<char> seen(nt, 0);
    seen[src] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int u = queue[h];
      for (int k = 0; k < 3; ++k) {
        const SideId out = 3 * u + k;
        const int v = Triangulation::triangle(t.glued(out));
        if (!seen[v]) {
          seen[v] = 1;
          parent[src][v] = out;
          queue.push_back(v);
        }
      }
    }
  }
  auto path = [&](int from, int to) {
    Walk p;
    for (int v = to; v != from; v = Triangulation::triangle(parent[from][v])) p.push_back(parent[from][v]);
    std::reverse(p.begin(), p.end());
    return p;
  };
  std::optional<NormalCurve> best;
  const Walk& aw = a.walk();
  for (const Walk& bw : {b.walk(), reverse_walk(t, b.walk())}) {
    for (int i = 0; i < static_cast<int>(aw.size()); ++i) {
      for (int j = 0; j < static_cast<int>(bw.size()); ++j) {
        const Walk p = path(Triangulation::triangle(aw[i]), Triangulation::triangle(bw[j]));
        Walk w = loop_from(aw, i);
        w.insert(w.end(), p.begin(), p.end());
        Walk part = loop_from(bw, j);
        w.insert(w.end(), part.begin(), part.end());
        for (auto it = p.rbegin(); it != p.rend(); ++it) w.push_back(t.glued(*it));
        Walk r = reduce_walk(t, w);
        if (r.empty() || any_of_nonzero(walk_homology(t, r))) continue;
        if (best && static_cast<int>(r.size()) > best->total_weight()) continue;
        std::optional<NormalCurve> c;
        try {
          c = normalize_path(a.surface_ptr(), r);
        } catch (const CurveError&) {
          continue;
        }
        if (*c == a || *c == b || !disjoint(*c, a) || !disjoint(*c, b)) continue;
        auto [h1, h2] = separating_genus(*c);
        if (h1 < 1 || h2 < 1) continue;
        if (!best || c->total_weight() < best->total_weight() ||
            (c->total_weight() == best->total_weight() && *c < *best)) {
          best = std::move(c);
        }
      }
    }
  }
  return best;
}

NormalCurve handle_separating(const SurfacePtr& s, int i) {
  require_handle(*s, i, s->genus());
  return commutator_curve(alpha_curve(s, i), beta_curve(s, i));
}

NormalCurve prefix_separating(const SurfacePtr& s, int h) {
  require_model(*s);
  if (h < 1 || h >= s->genus()) throw CurveError("prefix genus out of range");
  return edge_pushoff(s, {diagonal_edge(*s, 4 * h), 1});
}

NormalCurve alpha_partner(const SurfacePtr& s, int i) {
  require_model(*s);
  if (i < 1 || i >= s->genus()) throw CurveError("partner index out of range");
  return edge_pushoff(s, {diagonal_edge(*s, 4 * i + 1), 1});
}


NormalCurve interval_separating(const SurfacePtr& s, int i, int j) {
  const int g = s->genus();
  if (i < 0 || j <= i || j > g || j - i >= g) throw CurveError("handle interval out of range");
  if (j == g) return prefix_separating(s, i);
  return diagonal_pushoff(s, 4 * i, 4 * j);
}

NormalCurve interval_partner(const SurfacePtr& s, int i, int j) {
  const int g = s->genus();
  if (i < 0 || j <= i || j >= g) throw CurveError("handle interval out of range");
  return diagonal_pushoff(s, 4 * i, 4 * j + 1);
}

std::vector<NormalCurve> standard_generators(const SurfacePtr& s) {
  std::vector<NormalCurve> out;
  const int g = s->genus();
  for (int i = 0; i < g; ++i) {
    out.push_back(alpha_curve(s, i));
    out.push_back(beta_curve(s, i));
  }
  for (int i = 0; i + 1 < g; ++i) out.push_back(gamma_curve(s, i));
  return out;
}

std::vector<NormalCurve> standard_seeds(const SurfacePtr& s) {
  const int g = s->genus();
  std::vector<NormalCurve> out = standard_generators(s);
  for (int i = 0; i < g; ++i) out.push_back(handle_separating(s, i));
  for (int i = 0; i < g; ++i) {
    for (int j = i + 1; j <= g; ++j) {
      if (j - i < g) out.push_back(interval_separating(s, i, j));
    }
  }
  for (int i = 0; i < g; ++i) {
    for (int j = i + 1; j < g; ++j) out.push_back(interval_partner(s, i, j));
  }
  std::vector<NormalCurve> unique;
  for (auto& c : out) {
    if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(c);
  }
  return unique;
}

}  // namespace torelli
