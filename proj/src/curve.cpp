#include "torelli/curve.hpp"

#include <algorithm>
#include <numeric>

#include "torelli/util.hpp"

namespace torelli {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

void require_same_surface(const NormalCurve& a, const NormalCurve& b) {
  if (!a.valid() || !b.valid()) throw CurveError("curve has no ambient surface");
  if (a.surface_ptr() != b.surface_ptr() && !(a.surface() == b.surface())) {
    throw CurveError("curves live on different triangulations");
  }
}

// Arc layout inside one triangle for (generalized) normal weights.
struct TriangleArcs {
  int w[3];
  int corner[3];    // arcs around corner k (between sides k - 1 and k)
  int excess = -1;  // side carrying returning arcs

  TriangleArcs(const Triangulation& t, const std::vector<int>& weights, int tri) {
    for (int k = 0; k < 3; ++k) w[k] = weights[t.edge(3 * tri + k)];
    if ((w[0] + w[1] + w[2]) % 2 != 0) throw CurveError("weights violate the parity condition");
    for (int k = 0; k < 3; ++k) {
      if (w[k] > w[(k + 1) % 3] + w[(k + 2) % 3]) excess = k;
    }
    if (excess < 0) {
      for (int k = 0; k < 3; ++k) corner[k] = (w[k] + w[(k + 2) % 3] - w[(k + 1) % 3]) / 2;
    } else {
      int j = excess;
      corner[j] = w[(j + 2) % 3];
      corner[(j + 1) % 3] = w[(j + 1) % 3];
      corner[(j + 2) % 3] = 0;
    }
  }

  // Entering side slot k at position p: exit slot and position.
  std::pair<int, int> exit(int k, int p) const {
    int km = (k + 2) % 3, kp = (k + 1) % 3;
    if (k == excess) {
      int a = w[km], b = w[k] - w[kp];
      if (p < a) return {km, w[km] - 1 - p};
      if (p >= b) return {kp, w[k] - 1 - p};
      return {k, a + b - 1 - p};
    }
    if (p < corner[k]) return {km, w[km] - 1 - p};
    return {kp, w[k] - 1 - p};
  }
};

bool is_peripheral(const std::vector<int>& w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](int x) { return x == 2; });
}

HomologyVector positive(HomologyVector v) {
  for (auto x : v) {
    if (x < 0) {
      for (auto& y : v) y = -y;
      return v;
    }
    if (x > 0) return v;
  }
  return v;
}

}  // namespace

bool is_closed_walk(const Triangulation& t, const Walk& w) {
  const int m = static_cast<int>(w.size());
  for (int k = 0; k < m; ++k) {
    if (w[k] < 0 || w[k] >= t.num_sides()) return false;
  }
  for (int k = 0; k < m; ++k) {
    SideId in = t.glued(w[k]);
    if (in < 0 || Triangulation::triangle(in) != Triangulation::triangle(w[(k + 1) % m])) {
      return false;
    }
  }
  return true;
}

Walk reverse_walk(const Triangulation& t, const Walk& w) {
  Walk r(w.size());
  const std::size_t m = w.size();
  for (std::size_t k = 0; k < m; ++k) r[k] = t.glued(w[m - 1 - k]);
  return r;
}

Walk reduce_walk(const Triangulation& t, const Walk& w) {
  Walk stack;
  stack.reserve(w.size());
  for (SideId o : w) {
    if (!stack.empty() && o == t.glued(stack.back())) {
      stack.pop_back();
    } else {
      stack.push_back(o);
    }
  }
  std::size_t lo = 0, hi = stack.size();
  while (hi - lo >= 2 && stack[lo] == t.glued(stack[hi - 1])) {
    ++lo;
    --hi;
  }
  return Walk(stack.begin() + lo, stack.begin() + hi);
}

std::vector<int> walk_weights(const Triangulation& t, const Walk& w) {
  std::vector<int> weights(t.num_edges(), 0);
  for (SideId o : w) ++weights[t.edge(o)];
  return weights;
}

bool is_normal_weights(const Triangulation& t, const std::vector<int>& w) {
  if (static_cast<int>(w.size()) != t.num_edges()) return false;
  for (int x : w) {
    if (x < 0) return false;
  }
  for (int tri = 0; tri < t.num_triangles(); ++tri) {
    int x = w[t.edge(3 * tri)], y = w[t.edge(3 * tri + 1)], z = w[t.edge(3 * tri + 2)];
    if ((x + y + z) % 2 != 0 || x > y + z || y > x + z || z > x + y) return false;
  }
  return true;
}

Tracing trace_weights(const Triangulation& t, const std::vector<int>& w) {
  if (static_cast<int>(w.size()) != t.num_edges()) throw CurveError("weight vector has wrong length");
  for (int x : w) {
    if (x < 0) throw CurveError("weights must be nonnegative");
  }
  std::vector<TriangleArcs> arcs;
  arcs.reserve(t.num_triangles());
  for (int tri = 0; tri < t.num_triangles(); ++tri) arcs.emplace_back(t, w, tri);

  Tracing out;
  out.offset.assign(t.num_edges() + 1, 0);
  for (int e = 0; e < t.num_edges(); ++e) out.offset[e + 1] = out.offset[e] + w[e];
  out.label.assign(out.offset.back(), -1);

  auto point_id = [&](SideId s, int p) {
    int e = t.edge(s);
    return out.offset[e] + (t.sign(s) > 0 ? p : w[e] - 1 - p);
  };

  for (int e = 0; e < t.num_edges(); ++e) {
    for (int pa = 0; pa < w[e]; ++pa) {
      if (out.label[out.offset[e] + pa] >= 0) continue;
      const int component = static_cast<int>(out.walks.size());
      const SideId start_side = t.sides_of_edge(e)[1];
      const int start_pos = w[e] - 1 - pa;
      Walk walk;
      SideId s = start_side;
      int p = start_pos;
      do {
        out.label[point_id(s, p)] = component;
        auto [k, q] = arcs[Triangulation::triangle(s)].exit(Triangulation::slot(s), p);
        SideId o = 3 * Triangulation::triangle(s) + k;
        walk.push_back(o);
        s = t.glued(o);
        p = w[t.edge(o)] - 1 - q;
        if (walk.size() > out.label.size()) throw CurveError("tracing does not close");
      } while (s != start_side || p != start_pos);
      out.walks.push_back(std::move(walk));
      out.starts.emplace_back(e, pa);
    }
  }
  return out;
}

NormalCurve NormalCurve::from_weights(SurfacePtr surface, std::vector<int> w) {
  if (!surface) throw CurveError("curve needs an ambient surface");
  const Triangulation& t = *surface;
  if (!is_normal_weights(t, w)) throw CurveError("weights are not normal coordinates");
  if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; }) || is_peripheral(w)) {
    throw CurveError("inessential curve");
  }
  Tracing tr = trace_weights(t, w);
  if (tr.walks.size() != 1) throw CurveError("weights describe multiple components");
  NormalCurve c;
  c.surface_ = std::move(surface);
  c.weights_ = std::move(w);
  c.walk_ = std::move(tr.walks[0]);
  if (t.polygon_size() == 4 * t.genus()) {
    HomologyVector v = walk_homology(t, c.walk_);
    if (positive(v) != v) c.walk_ = reverse_walk(t, c.walk_);
  }
  return c;
}

int NormalCurve::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0);
}

nlohmann::json NormalCurve::to_json() const {
  return {{"weights", weights_}, {"triangulation", surface_->hash_hex()}};
}

NormalCurve NormalCurve::from_json(SurfacePtr surface, const nlohmann::json& j) {
  if (j.at("triangulation").get<std::string>() != surface->hash_hex()) {
    throw CurveError("curve record belongs to a different triangulation");
  }
  return from_weights(std::move(surface), j.at("weights").get<std::vector<int>>());
}

NormalCurve normalize(SurfacePtr surface, const std::vector<int>& raw) {
  if (!surface) throw CurveError("curve needs an ambient surface");
  const Triangulation& t = *surface;
  Tracing tr = trace_weights(t, raw);
  std::vector<Walk> essential;
  for (const Walk& w : tr.walks) {
    Walk r = reduce_walk(t, w);
    if (r.empty() || is_peripheral(walk_weights(t, r))) continue;
    essential.push_back(std::move(r));
  }
  if (essential.empty()) throw CurveError("inessential curve");
  if (essential.size() > 1) throw CurveError("input has multiple essential components");
  return NormalCurve::from_weights(std::move(surface), walk_weights(t, essential[0]));
}

NormalCurve normalize_path(SurfacePtr surface, const Walk& raw) {
  if (!surface) throw CurveError("curve needs an ambient surface");
  const Triangulation& t = *surface;
  if (raw.empty() || !is_closed_walk(t, raw)) throw CurveError("edge path is not a closed walk");
  Walk r = reduce_walk(t, raw);
  if (r.empty()) throw CurveError("inessential curve");
  std::vector<int> w = walk_weights(t, r);
  if (is_peripheral(w)) throw CurveError("inessential curve");
  if (self_intersection(t, r) != 0) throw CurveError("edge path is not simple");
  if (trace_weights(t, w).walks.size() != 1) {
    throw CurveError("edge path is a multiple of a simple curve");
  }
  return NormalCurve::from_weights(std::move(surface), std::move(w));
}

Walk OrientedCurve::walk() const {
  return reversed ? reverse_walk(curve.surface(), curve.walk()) : curve.walk();
}

std::vector<SharedSegment> shared_segments(const Triangulation& t, const Walk& a,
                                           const Walk& b) {
  std::vector<SharedSegment> result;
  const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  if (m == 0 || n == 0) return result;
  for (bool reversed : {false, true}) {
    const Walk bb = reversed ? reverse_walk(t, b) : b;
    std::vector<std::vector<int>> at(t.num_sides());
    for (int j = 0; j < n; ++j) at[bb[j]].push_back(j);
    for (int i = 0; i < m; ++i) {
      const SideId s = a[i];
      const SideId a_prev = a[mod(i - 1, m)];
      for (int j : at[s]) {
        if (a_prev == bb[mod(j - 1, n)]) continue;
        int len = 1;
        while (len < m + n && a[(i + len) % m] == bb[(j + len) % n]) ++len;
        if (len >= m + n) continue;
        SharedSegment seg;
        seg.i = i;
        seg.j = j;
        seg.length = len;
        seg.reversed = reversed;
        seg.upper = t.glued(a_prev) == Triangulation::ccw_next(s);
        const SideId s_end = t.glued(a[(i + len - 1) % m]);
        const bool upper_end = a[(i + len) % m] == Triangulation::ccw_prev(s_end);
        seg.linked = seg.upper != upper_end;
        result.push_back(seg);
      }
    }
  }
  return result;
}

int geometric_intersection(const NormalCurve& a, const NormalCurve& b) {
  require_same_surface(a, b);
  if (a == b) return 0;
  int count = 0;
  for (const auto& seg : shared_segments(a.surface(), a.walk(), b.walk())) count += seg.linked;
  return count;
}

int algebraic_intersection(const OrientedCurve& a, const OrientedCurve& b) {
  require_same_surface(a.curve, b.curve);
  if (a.curve == b.curve) return 0;
  int total = 0;
  for (const auto& seg : shared_segments(a.curve.surface(), a.walk(), b.walk())) {
    if (!seg.linked) continue;
    int sign = seg.upper ? 1 : -1;
    total += seg.reversed ? -sign : sign;
  }
  return total;
}

int self_intersection(const Triangulation& t, const Walk& w) {
  int count = 0;
  for (const auto& seg : shared_segments(t, w, w)) count += seg.linked;
  return count / 2;
}

HomologyVector walk_homology(const Triangulation& t, const Walk& w) {
  const int g = t.genus();
  if (t.polygon_size() != 4 * g) throw CurveError("homology needs the canonical polygon model");
  // Signed crossings with the basis loops, then x = J v.
  HomologyVector v(2 * g, 0);
  for (SideId o : w) {
    int e = t.edge(o);
    if (e < 2 * g) v[e] += t.sign(o);
  }
  HomologyVector x(2 * g, 0);
  for (int i = 0; i < g; ++i) {
    x[2 * i] = v[2 * i + 1];
    x[2 * i + 1] = -v[2 * i];
  }
  return x;
}

HomologyVector homology_class(const OrientedCurve& c) {
  return walk_homology(c.curve.surface(), c.walk());
}

HomologyVector homology_class(const NormalCurve& c) {
  return walk_homology(c.surface(), c.walk());
}

std::int64_t symplectic_pairing(const HomologyVector& x, const HomologyVector& y) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) total += x[i] * y[i + 1] - x[i + 1] * y[i];
  return total;
}

bool is_separating(const NormalCurve& c) {
  HomologyVector v = homology_class(c);
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

bool disjoint(const NormalCurve& a, const NormalCurve& b) {
  require_same_surface(a, b);
  if (a == b) return true;
  const Triangulation& t = a.surface();
  const int edges = t.num_edges();
  std::vector<int> w(edges), count(edges, 0);
  int start_edge = -1;
  for (int e = 0; e < edges; ++e) {
    w[e] = a.weights()[e] + b.weights()[e];
    if (start_edge < 0 && w[e] > 0) start_edge = e;
  }
  std::vector<int> corner(t.num_sides());
  for (int tri = 0; tri < t.num_triangles(); ++tri) {
    int x[3];
    for (int k = 0; k < 3; ++k) x[k] = w[t.edge(3 * tri + k)];
    for (int k = 0; k < 3; ++k) corner[3 * tri + k] = (x[k] + x[(k + 2) % 3] - x[(k + 1) % 3]) / 2;
  }
  // Trace only the component through the first point of the sum; the two
  // curves are disjoint iff it carries the weights of one of them.
  const int limit = std::max(a.total_weight(), b.total_weight());
  const SideId start_side = t.sides_of_edge(start_edge)[1];
  const int start_pos = w[start_edge] - 1;
  SideId s = start_side;
  int p = start_pos, steps = 0;
  do {
    const int tri = Triangulation::triangle(s), k = Triangulation::slot(s);
    SideId o;
    int q;
    if (p < corner[s]) {
      o = 3 * tri + (k + 2) % 3;
      q = w[t.edge(o)] - 1 - p;
    } else {
      o = 3 * tri + (k + 1) % 3;
      q = w[t.edge(s)] - 1 - p;
    }
    ++count[t.edge(o)];
    if (++steps > limit) return false;
    s = t.glued(o);
    p = w[t.edge(o)] - 1 - q;
  } while (s != start_side || p != start_pos);
  return count == a.weights() || count == b.weights();
}

bool disjoint_by_full_trace(const NormalCurve& a, const NormalCurve& b) {
  require_same_surface(a, b);
  const Triangulation& t = a.surface();
  std::vector<int> sum(a.weights());
  for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += b.weights()[e];
  Tracing tr = trace_weights(t, sum);
  if (tr.walks.size() != 2) return false;
  std::vector<int> w0 = walk_weights(t, tr.walks[0]), w1 = walk_weights(t, tr.walks[1]);
  return (w0 == a.weights() && w1 == b.weights()) || (w0 == b.weights() && w1 == a.weights());
}

bool ComplementProfile::has_annulus() const {
  return std::any_of(components.begin(), components.end(),
                     [](const ComplementComponent& c) { return c.genus == 0 && c.boundary == 2; });
}

nlohmann::json ComplementProfile::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : components) out.push_back({{"genus", c.genus}, {"boundary", c.boundary}});
  return out;
}

ComplementProfile cut_components(const std::vector<NormalCurve>& curves) {
  if (curves.empty()) throw CurveError("cut needs at least one curve");
  for (const auto& c : curves) require_same_surface(curves[0], c);
  const Triangulation& t = curves[0].surface();
  std::vector<int> w(t.num_edges(), 0);
  for (const auto& c : curves) {
    for (int e = 0; e < t.num_edges(); ++e) w[e] += c.weights()[e];
  }
  if (!is_normal_weights(t, w)) throw CurveError("curves are not pairwise disjoint");
  Tracing tr = trace_weights(t, w);
  if (tr.walks.size() != curves.size()) throw CurveError("curves are not pairwise disjoint");
  {
    std::vector<std::vector<int>> traced, given;
    for (const auto& walk : tr.walks) traced.push_back(walk_weights(t, walk));
    for (const auto& c : curves) given.push_back(c.weights());
    std::sort(traced.begin(), traced.end());
    std::sort(given.begin(), given.end());
    if (traced != given) throw CurveError("curves are not pairwise disjoint");
  }

  // Regions per triangle: one central region plus corner(j, r), r = 0 at the vertex.
  std::vector<TriangleArcs> arcs;
  std::vector<int> base(t.num_triangles() + 1, 0);
  for (int tri = 0; tri < t.num_triangles(); ++tri) {
    arcs.emplace_back(t, w, tri);
    const auto& a = arcs.back();
    base[tri + 1] = base[tri] + 1 + a.corner[0] + a.corner[1] + a.corner[2];
  }
  auto corner_region = [&](int tri, int j, int r) {
    const auto& a = arcs[tri];
    int off = 0;
    for (int k = 0; k < j; ++k) off += a.corner[k];
    return base[tri] + 1 + off + r;
  };
  auto segment_region = [&](SideId s, int q) {
    int tri = Triangulation::triangle(s), j = Triangulation::slot(s);
    const auto& a = arcs[tri];
    int nj = a.corner[j], wj = a.w[j];
    if (q < nj) return corner_region(tri, j, q);
    if (q == nj) return base[tri];
    return corner_region(tri, (j + 1) % 3, wj - q);
  };

  DisjointSets regions(base.back());
  for (SideId s = 0; s < t.num_sides(); ++s) {
    SideId o = t.glued(s);
    if (o < s) continue;
    int we = w[t.edge(s)];
    for (int q = 0; q <= we; ++q) regions.unite(segment_region(s, q), segment_region(o, we - q));
  }
  std::vector<int> comp_of_root(base.back(), -1);
  int num_components = 0;
  std::vector<int> comp(base.back());
  for (int r = 0; r < base.back(); ++r) {
    int root = regions.find(r);
    if (comp_of_root[root] < 0) comp_of_root[root] = num_components++;
    comp[r] = comp_of_root[root];
  }

  std::vector<int> chi(num_components, 0), boundary(num_components, 0);
  for (int r = 0; r < base.back(); ++r) chi[comp[r]] += 1;
  for (int tri = 0; tri < t.num_triangles(); ++tri) {
    for (int j = 0; j < 3; ++j) {
      int nj = arcs[tri].corner[j];
      for (int r = 0; r < nj; ++r) {
        chi[comp[corner_region(tri, j, r)]] -= 1;
        chi[comp[r + 1 < nj ? corner_region(tri, j, r + 1) : base[tri]]] -= 1;
      }
    }
  }
  for (SideId s = 0; s < t.num_sides(); ++s) {
    if (t.glued(s) < s) continue;
    for (int q = 0; q <= w[t.edge(s)]; ++q) chi[comp[segment_region(s, q)]] -= 1;
  }
  chi[comp[segment_region(0, 0)]] += 1;
  for (int e = 0; e < t.num_edges(); ++e) {
    SideId s = t.sides_of_edge(e)[0];
    for (int p = 0; p < w[e]; ++p) {
      chi[comp[segment_region(s, p)]] += 1;
      chi[comp[segment_region(s, p + 1)]] += 1;
    }
  }
  for (const auto& [e, pa] : tr.starts) {
    SideId s = t.sides_of_edge(e)[0];
    boundary[comp[segment_region(s, pa)]] += 1;
    boundary[comp[segment_region(s, pa + 1)]] += 1;
  }

  ComplementProfile profile;
  for (int c = 0; c < num_components; ++c) {
    int twice_genus = 2 - chi[c] - boundary[c];
    if (twice_genus < 0 || twice_genus % 2 != 0) throw CurveError("inconsistent cut topology");
    profile.components.push_back({twice_genus / 2, boundary[c], chi[c]});
  }
  return profile;
}

bool is_parallel(const NormalCurve& a, const NormalCurve& b) {
  if (a == b || !disjoint(a, b)) return false;
  return cut_components({a, b}).has_annulus();
}

bool is_bounding_pair(const NormalCurve& a, const NormalCurve& b) {
  require_same_surface(a, b);
  if (a == b || !disjoint(a, b)) return false;
  if (is_separating(a) || is_separating(b)) return false;
  ComplementProfile p = cut_components({a, b});
  return p.count() == 2 && !p.has_annulus();
}

std::pair<int, int> separating_genus(const NormalCurve& c) {
  if (!is_separating(c)) throw CurveError("curve is not separating");
  ComplementProfile p = cut_components({c});
  if (p.count() != 2) throw CurveError("separating curve does not cut into two pieces");
  int h0 = p.components[0].genus, h1 = p.components[1].genus;
  return {std::min(h0, h1), std::max(h0, h1)};
}

bool is_genus_one_separating(const NormalCurve& c) {
  return is_separating(c) && separating_genus(c).first == 1;
}

}  // namespace torelli
