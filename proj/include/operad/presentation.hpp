#pragma once

// Operad presentations and their text file format:
//
//   # comment
//   mode shuffle
//   generators mu:2 alpha:2
//   precedence alpha,mu        (optional; largest first)
//   relations
//   (mu (alpha 1 2) (alpha 3 4))
//   (c (l 1 2) 3) + (c 1 (l 2 3)) - (c (l 1 3) 2)

#include <string>
#include <string_view>
#include <vector>

#include "operad/element.hpp"
#include "operad/monomial.hpp"
#include "operad/order.hpp"

namespace operad {

struct Presentation {
  Mode mode = Mode::shuffle;
  Signature signature;
  std::vector<std::string> precedence;
  std::vector<OperadElement> relations;

  /// True iff every relation is a single monomial (coefficients ignored).
  bool is_monomial() const;
  /// The relation monomials of a monomial presentation; throws otherwise.
  std::vector<TreeMonomial> monomials() const;
  int max_relation_arity() const;
  /// Path-lex order using the file precedence unless override_names is non-empty.
  MonomialOrder order(const std::vector<std::string>& override_names = {}) const;
};

/// Monomial presentation with the given relation monomials.
Presentation monomial_presentation(Mode mode, const Signature& sig,
                                   const std::vector<TreeMonomial>& monomials);

/// Throws ParseError carrying the 1-based line number.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);

std::string format_presentation(const Presentation& p);

}  // namespace operad
