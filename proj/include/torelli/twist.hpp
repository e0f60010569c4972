#pragma once

#include <cstdint>
#include <vector>

#include "torelli/curve.hpp"

namespace torelli {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct TwistLetter {
  NormalCurve curve;
  int exponent = 0;
};

/// Formal product of twist powers, read as a composition of maps: the
/// rightmost letter acts first.
class MappingClassWord {
 public:
  MappingClassWord() = default;
  explicit MappingClassWord(std::vector<TwistLetter> letters);

  const std::vector<TwistLetter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  /// Appends with free reduction against the last letter.
  void push_back(TwistLetter letter);
  MappingClassWord inverse() const;
  friend MappingClassWord operator*(const MappingClassWord& a, const MappingClassWord& b);

 private:
  std::vector<TwistLetter> letters_;
};

/// T_t^n(c); positive n is the left twist.
NormalCurve dehn_twist(const NormalCurve& t, int n, const NormalCurve& c);

NormalCurve word_action(const MappingClassWord& w, const NormalCurve& c);

/// v -> v + n <t, v> t.
IntMatrix transvection(const HomologyVector& t, int n);
IntMatrix homology_action(const MappingClassWord& w);
IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
HomologyVector apply_matrix(const IntMatrix& m, const HomologyVector& v);
bool is_symplectic(const IntMatrix& m);

bool is_torelli(const MappingClassWord& w);

/// T_a T_b^{-1} for a bounding pair (a, b).
MappingClassWord bp_map(const NormalCurve& a, const NormalCurve& b);

}  // namespace torelli
