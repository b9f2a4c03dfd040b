#pragma once

// Truncated formal power series with exact rational coefficients.
//
// Coefficients are always those of z^n; the flavour records whether the
// series is an ordinary (dims) or exponential (dims / n!) generating series.
// A series of order N knows c_0..c_N exactly and nothing beyond.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "operad/polynomial.hpp"
#include "operad/rational.hpp"

namespace operad {

enum class Flavor { ogf, egf };

std::string_view to_string(Flavor f);

class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(Flavor flavor, int order);
  PowerSeries(Flavor flavor, std::vector<Rational> coeffs);

  static PowerSeries z(Flavor flavor, int order);
  static PowerSeries constant(Flavor flavor, int order, const Rational& c);

  Flavor flavor() const noexcept { return flavor_; }
  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  /// Throws Error beyond the truncation order.
  const Rational& operator[](int n) const;
  void set(int n, const Rational& v);
  /// Index of the first nonzero coefficient, or order()+1 when all vanish.
  int valuation() const;

  PowerSeries truncate(int order) const;
  PowerSeries with_flavor(Flavor f) const;

  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  PowerSeries& operator*=(const Rational& c);
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const Rational& c, PowerSeries a) { return a *= c; }
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  Flavor flavor_ = Flavor::ogf;
  std::vector<Rational> c_{Rational(0)};
};

PowerSeries derive(const PowerSeries& f);
/// Antiderivative with zero constant term; the order grows by one.
PowerSeries integrate(const PowerSeries& f);
/// f(g) for g(0) = 0.
PowerSeries compose(const PowerSeries& f, const PowerSeries& g);
/// 1/f for f(0) != 0.
PowerSeries reciprocal(const PowerSeries& f);
PowerSeries power(const PowerSeries& f, unsigned k);

/// C(f, g)(z) = integral from 0 to z of f'(w) g(w) dw.
PowerSeries c_operation(const PowerSeries& f, const PowerSeries& g);

/// Compositional inverse g with f(g(z)) = z to order n. Requires f(0) = 0
/// and f'(0) != 0 (HypothesisError otherwise) and f known to order n.
PowerSeries lagrange_inverse(const PowerSeries& f, int n);

/// Multiplies (ogf -> egf: divides) coefficient n by n!.
PowerSeries flavor_convert(const PowerSeries& s, Flavor target);
std::vector<Integer> symmetrize_dims(std::span<const Integer> nonsymmetric);
/// dims[n] = coefficient n (times n! for an egf); throws on non-integers.
std::vector<Integer> dims_of(const PowerSeries& s);

/// "egf 12; 0 1 1 2 19/4 ..."
std::string format_series(const PowerSeries& s);

/// Substitutes series[i] for variable i of p.
PowerSeries evaluate(const Polynomial& p, std::span<const PowerSeries> series);

/// Q(z, S(z)) == 0 to the order of S, for Q over the variables (z, y).
/// Requires order(S) >= deg_z Q + deg_y Q + 4 (InsufficientOrder otherwise).
bool verify_algebraic(const Polynomial& q, const PowerSeries& s);

/// A differential polynomial: variable 0 is z, variable k >= 1 stands for
/// the derivative of order vars[k-1].second of unknown vars[k-1].first.
struct DiffPolynomial {
  Polynomial poly;
  std::vector<std::pair<int, int>> vars;

  /// Single-unknown form over (z, y, y', ..., y^(max_derivative)).
  static DiffPolynomial single(Polynomial p, int max_derivative);
  int max_derivative() const;
  std::string format(const std::vector<std::string>& unknown_names) const;
};

/// D(z, S, S', ...) == 0 to the order at which it is determined. Requires at
/// least deg_z D + 4 determined coefficients (InsufficientOrder otherwise).
bool verify_ode(const DiffPolynomial& d, std::span<const PowerSeries> unknowns);
bool verify_ode(const DiffPolynomial& d, const PowerSeries& s);

/// P/Q with Q(0) = 1.
struct RationalFunction {
  std::vector<Rational> num;
  std::vector<Rational> den;
  int spare = 0;  // coefficients matched beyond those used for fitting

  PowerSeries expand(Flavor flavor, int order) const;
  std::string format() const;
};

/// Smallest-denominator rational function reproducing every coefficient of
/// s, with denominators of degree 0..max_den_degree and numerators of degree
/// at most den + 1, requiring at least 4 spare matching coefficients.
std::optional<RationalFunction> guess_rational(const PowerSeries& s, int max_den_degree = 6);

/// Solves the square system a x = b exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b);

/// A basis of the null space of a (rows x cols).
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> a, int cols);

}  // namespace operad
