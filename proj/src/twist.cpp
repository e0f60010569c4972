#include "torelli/twist.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

namespace torelli {

MappingClassWord::MappingClassWord(std::vector<TwistLetter> letters) {
  for (auto& l : letters) push_back(std::move(l));
}

void MappingClassWord::push_back(TwistLetter letter) {
  if (letter.exponent == 0) return;
  if (!letters_.empty() && letters_.back().curve == letter.curve) {
    letters_.back().exponent += letter.exponent;
    if (letters_.back().exponent == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(std::move(letter));
}

MappingClassWord MappingClassWord::inverse() const {
  MappingClassWord out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.push_back({it->curve, -it->exponent});
  }
  return out;
}

MappingClassWord operator*(const MappingClassWord& a, const MappingClassWord& b) {
  MappingClassWord out = a;
  for (const auto& l : b.letters()) out.push_back(l);
  return out;
}

NormalCurve dehn_twist(const NormalCurve& t, int n, const NormalCurve& c) {
  if (n == 0) throw CurveError("twist exponent must be nonzero");
  const Triangulation& tri = c.surface();
  if (&t.surface() != &tri && !(t.surface() == tri)) {
    throw CurveError("curves live on different triangulations");
  }
  const Walk& a = c.walk();
  const Walk forward = t.walk();
  const Walk backward = reverse_walk(tri, forward);
  const int m = static_cast<int>(a.size());
  const int mt = static_cast<int>(forward.size());

  // One inserted copy of the twisting loop per essential crossing.
  struct Insertion {
    int i;
    int length;
    Walk loop;
  };
  std::vector<Insertion> insertions;
  for (const auto& seg : shared_segments(tri, a, forward)) {
    if (!seg.linked) continue;
    const Walk& tt = seg.reversed ? backward : forward;
    Walk loop;
    if (seg.upper != (n > 0)) {
      for (int k = 0; k < mt; ++k) loop.push_back(tt[(seg.j + k) % mt]);
    } else {
      for (int k = 1; k <= mt; ++k) loop.push_back(tri.glued(tt[((seg.j - k) % mt + mt) % mt]));
    }
    insertions.push_back({seg.i, seg.length, std::move(loop)});
  }
  if (insertions.empty()) return c;
  std::stable_sort(insertions.begin(), insertions.end(), [](const auto& x, const auto& y) {
    return std::tie(x.i, x.length) < std::tie(y.i, y.length);
  });

  Walk out;
  std::size_t next = 0;
  for (int i = 0; i < m; ++i) {
    while (next < insertions.size() && insertions[next].i == i) {
      for (int r = 0; r < std::abs(n); ++r) {
        out.insert(out.end(), insertions[next].loop.begin(), insertions[next].loop.end());
      }
      ++next;
    }
    out.push_back(a[i]);
  }
  Walk reduced = reduce_walk(tri, out);
  return NormalCurve::from_weights(c.surface_ptr(), walk_weights(tri, reduced));
}

NormalCurve word_action(const MappingClassWord& w, const NormalCurve& c) {
  NormalCurve out = c;
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    out = dehn_twist(it->curve, it->exponent, out);
  }
  return out;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, std::vector<std::int64_t>(p, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

HomologyVector apply_matrix(const IntMatrix& m, const HomologyVector& v) {
  HomologyVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

IntMatrix transvection(const HomologyVector& t, int n) {
  const std::size_t d = t.size();
  IntMatrix m = identity_matrix(d);
  for (std::size_t j = 0; j < d; ++j) {
    HomologyVector e(d, 0);
    e[j] = 1;
    std::int64_t p = symplectic_pairing(t, e);
    for (std::size_t i = 0; i < d; ++i) m[i][j] += n * p * t[i];
  }
  return m;
}

IntMatrix homology_action(const MappingClassWord& w) {
  if (w.empty()) return {};
  const std::size_t d = 2 * static_cast<std::size_t>(w.letters()[0].curve.surface().genus());
  IntMatrix m = identity_matrix(d);
  for (const auto& l : w.letters()) m = multiply(m, transvection(homology_class(l.curve), l.exponent));
  return m;
}

bool is_symplectic(const IntMatrix& m) {
  const std::size_t d = m.size();
  for (std::size_t i = 0; i < d; ++i) {
    HomologyVector ci(d), cj(d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t r = 0; r < d; ++r) {
        ci[r] = m[r][i];
        cj[r] = m[r][j];
      }
      HomologyVector ei(d, 0), ej(d, 0);
      ei[i] = 1;
      ej[j] = 1;
      if (symplectic_pairing(ci, cj) != symplectic_pairing(ei, ej)) return false;
    }
  }
  return true;
}

bool is_torelli(const MappingClassWord& w) {
  if (w.empty()) return true;
  IntMatrix m = homology_action(w);
  return m == identity_matrix(m.size());
}

MappingClassWord bp_map(const NormalCurve& a, const NormalCurve& b) {
  if (!is_bounding_pair(a, b)) throw CurveError("curves do not form a bounding pair");
  return MappingClassWord({{a, 1}, {b, -1}});
}

}  // namespace torelli
