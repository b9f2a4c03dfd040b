#pragma once

// Lower bounds of Golod-Shafarevich type, the explicit bracket for operads
// generated by binary operations, upper bounds from partial Groebner bases
// and growth estimates.

#include <optional>
#include <string>
#include <vector>

#include "operad/enumeration.hpp"
#include "operad/series.hpp"

namespace operad {

/// Generating series of the generators X(t) and relations R(t), counted per
/// arity (exponential for shuffle presentations, ordinary for planar ones).
struct GSInput {
  PowerSeries x;
  PowerSeries r;
};

GSInput gs_input(const Presentation& p, int order);

struct GSBound {
  PowerSeries series;          // the compositional inverse of t - X(t) + R(t)
  bool hypothesis = false;     // t/f(t) has nonnegative coefficients to the order
  bool nonnegative = false;    // every coefficient of the inverse is >= 0
  /// Coefficient n of the bound as a dimension (times n! for an egf).
  Rational dim(int n) const;
};

/// Throws HypothesisError unless f(0) = 0 and f'(0) = 1.
GSBound gs_lower_bound(const GSInput& in, int order);

struct BinaryRow {
  int n = 1;                 // the bracket is for arity n + 1
  Integer lower;             // ceil of (2n)!/n! * z0^-n, certified via the upper root endpoint
  double lower_printed = 0;  // (2n)!/(n-1)! * z0^-n, kept for comparison
  Integer upper;             // (2n)!/n! * (c/2)^n, the free-operad count
  Rational gs;               // GS lower bound coefficient as a dimension
  bool sandwich = false;     // lower <= gs <= upper
};

struct BinaryBounds {
  Rational c;                // dim X(2)
  Rational d;                // dim R(3) when the relations are cubic, else 0
  bool quadratic = false;
  bool condition = true;     // d <= 3c^2/8 in the quadratic case
  bool root_found = false;
  Rational z0_lo, z0_hi;     // certified bracket of the smallest positive root
  double z0 = 0;
  std::string z0_radical;    // closed form "a - b*sqrt(k)" for quadratic phi, else empty
  std::vector<BinaryRow> rows;
};

/// Bracket for an operad generated by c binary operations with relation
/// series r (egf). Rows cover n = 1..n_max - 1.
BinaryBounds binary_bounds(int c, const PowerSeries& r, int n_max);

/// Dimensions of the monomial operad on the leading monomials of a
/// truncated Groebner basis: an upper bound on the true dimensions, exact
/// below the cap.
DimTable partial_gb_bound(const Presentation& p, const MonomialOrder& order,
                          const GroebnerOptions& options, int n_max);

struct GrowthRow {
  int arity = 0;
  double root = 0;             // dim^(1/n)
  double factorial_root = 0;   // (dim/n!)^(1/n)
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  std::optional<RationalFunction> rational;  // of dims (ogf) or dims/n! (egf)
  std::optional<Rational> exact_exponent;    // reciprocal of a rational dominant pole
  std::optional<double> pole_estimate;       // reciprocal of the smallest pole modulus
  std::string text() const;
};

/// Needs dims for at least 4 arities (dims[0] is ignored).
GrowthReport growth_report(const std::vector<Integer>& dims, Flavor flavor);

/// (2n)!/n!.
Integer factorial_quotient(int n);

}  // namespace operad
