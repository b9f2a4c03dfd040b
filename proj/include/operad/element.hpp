#pragma once

// Finite linear combinations of tree monomials with rational coefficients.

#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "operad/monomial.hpp"
#include "operad/order.hpp"
#include "operad/rational.hpp"

namespace operad {

/// An arity-homogeneous element of a free operad. Zero coefficients are
/// never stored; the zero element has arity 0.
class OperadElement {
 public:
  using Terms = std::map<TreeMonomial, Rational>;

  OperadElement() = default;
  explicit OperadElement(const TreeMonomial& m, const Rational& c = 1);

  /// Adds c*m. Throws Error when m has a different arity or kind.
  void add(const TreeMonomial& m, const Rational& c);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Terms& terms() const noexcept { return terms_; }
  int arity() const noexcept { return arity_; }
  Mode mode() const noexcept { return mode_; }
  Rational coefficient(const TreeMonomial& m) const;

  /// Largest monomial and its coefficient; throws Error on zero.
  std::pair<TreeMonomial, Rational> leading(const MonomialOrder& order) const;
  /// Divides by the leading coefficient; returns that coefficient.
  Rational make_monic(const MonomialOrder& order);

  OperadElement& operator+=(const OperadElement& other);
  OperadElement& operator-=(const OperadElement& other);
  OperadElement& operator*=(const Rational& c);
  friend OperadElement operator+(OperadElement a, const OperadElement& b) { return a += b; }
  friend OperadElement operator-(OperadElement a, const OperadElement& b) { return a -= b; }
  friend OperadElement operator*(const Rational& c, OperadElement a) { return a *= c; }
  friend bool operator==(const OperadElement& a, const OperadElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
  int arity_ = 0;
  Mode mode_ = Mode::planar;
};

/// Sum of c * substitute(host, occ, t) over the terms c*t of r.
OperadElement lift(const OperadElement& r, const TreeMonomial& host, const Occurrence& occ);

/// element := term (("+"|"-") term)*; term := [rational ["*"]] tree | "0".
OperadElement parse_element(std::string_view text, const Signature& sig, Mode mode);

/// Terms in decreasing order; unit coefficients are omitted.
std::string format_element(const OperadElement& e, const Signature& sig,
                           const MonomialOrder& order);

}  // namespace operad
