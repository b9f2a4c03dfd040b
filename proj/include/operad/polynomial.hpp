#pragma once

// Sparse multivariate polynomials over the rationals, with resultants and
// pseudo-division in a chosen variable.

#include <map>
#include <string>
#include <vector>

#include "operad/rational.hpp"

namespace operad {

class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Rational>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int var, int power = 1);

  int nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  void add_term(const Exponents& e, const Rational& c);
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Degree in var; -1 for the zero polynomial.
  int degree(int var) const;
  int total_degree() const;
  bool depends_on(int var) const { return degree(var) > 0; }
  /// Coefficient of var^k (a polynomial not involving var).
  Polynomial coefficient(int var, int k) const;
  Polynomial substitute(int var, const Polynomial& value) const;
  Polynomial derivative(int var) const;
  Polynomial pow(unsigned k) const;

  /// Integer coefficients with gcd 1 and a positive leading term (in the
  /// display order); the zero polynomial is returned unchanged.
  Polynomial primitive() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Terms ordered by the exponent of the last variable first, descending.
  std::string format(const std::vector<std::string>& names) const;

 private:
  void check(const Polynomial& o) const;

  int nvars_;
  Terms terms_;
};

/// Resultant with respect to var (Sylvester determinant).
Polynomial resultant(const Polynomial& p, const Polynomial& q, int var);

/// Pseudo-remainder of p by q with respect to var.
Polynomial pseudo_remainder(const Polynomial& p, const Polynomial& q, int var);

}  // namespace operad
