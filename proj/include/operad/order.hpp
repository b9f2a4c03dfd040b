#pragma once

// Path-lexicographic order on tree monomials of a fixed arity.
//
// Monomials are compared by weight, then by the words of generators read
// along the root-to-leaf paths of leaves 1..n (each word compared by length,
// then lexicographically by generator precedence), then by the leaf
// permutation read right to left. The first generator of the precedence list
// is the largest letter.

#include <compare>
#include <string>
#include <vector>

#include "operad/monomial.hpp"

namespace operad {

class MonomialOrder {
 public:
  MonomialOrder() = default;
  /// precedence lists generator indices, largest first; generators missing
  /// from it follow in declaration order.
  explicit MonomialOrder(const Signature& sig, std::vector<int> precedence = {});
  static MonomialOrder from_names(const Signature& sig, const std::vector<std::string>& names);

  /// Throws Error on arity or mode mismatch.
  std::strong_ordering compare(const TreeMonomial& a, const TreeMonomial& b) const;
  bool less(const TreeMonomial& a, const TreeMonomial& b) const { return compare(a, b) < 0; }

  /// Path words of m indexed by leaf label - 1, in precedence ranks.
  std::vector<std::vector<int>> path_words(const TreeMonomial& m) const;

  const std::vector<int>& precedence() const noexcept { return precedence_; }
  std::string describe(const Signature& sig) const;

 private:
  std::vector<int> precedence_;
  std::vector<int> rank_;  // rank_[gen]: larger is bigger
};

}  // namespace operad
