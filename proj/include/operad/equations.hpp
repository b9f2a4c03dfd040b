#pragma once

// Generating-series equations of monomial operads via stamps: shallow
// normal shapes indexing one unknown each. Planar presentations give
// polynomial systems (ordinary series), shuffle-regular presentations give
// systems in the C-operation (exponential series), and symmetric-regular
// ones collapse further to polynomial systems.

#include <string>
#include <vector>

#include "operad/presentation.hpp"
#include "operad/series.hpp"

namespace operad {

/// coef * C(y[args[0]], y[args[1]] * ... * y[args.back()]), contributed by
/// the generator gen.
struct CTerm {
  Rational coef{1};
  int gen = 0;
  std::vector<int> args;
};

struct EquationSystem {
  enum class Kind { polynomial, c_operation };

  Kind kind = Kind::polynomial;
  Flavor flavor = Flavor::ogf;
  std::vector<std::string> names;     // unknowns
  std::vector<TreeMonomial> stamps;   // the stamp behind each unknown
  /// Polynomial kind: y_i = rhs[i], over the variables (z, y_0, ..., y_{N-1}).
  std::vector<Polynomial> rhs;
  /// C kind: y_i = z_coef[i] * z + sum of c_terms[i].
  std::vector<Rational> z_coef;
  std::vector<std::vector<CTerm>> c_terms;
  /// Linear form over (z, y...) giving the generating series of the operad.
  Polynomial total;

  int size() const { return static_cast<int>(names.size()); }
  /// One line per unknown, "y_i = ..."; polynomial equations are scaled to
  /// integer coefficients with gcd 1 (e.g. "2*y_1 = z^2 + ...").
  std::string format() const;
  std::string format_total() const;
};

/// Maximal depth of the relation monomials (0 without relations).
int stamp_level(const Presentation& p);

/// Normal shapes of depth below the relation level, ordered by depth,
/// then arity, then structurally. Always starts with Id.
std::vector<TreeMonomial> stamp_set(const Presentation& p);

/// Ordinary-series system of a planar monomial presentation.
EquationSystem build_planar_system(const Presentation& p);

/// C-operation system of a shuffle monomial presentation. Throws
/// HypothesisError naming a missing relabelling when the relations are not
/// shuffle regular.
EquationSystem build_shuffle_system(const Presentation& p);

/// Replaces each complete family of C-terms over the orderings of the same
/// children by the product it sums to, substitutes y_0 = z and merges
/// unknowns with identical right-hand sides. Throws HypothesisError when
/// the relations are not symmetric regular and Error when a family is
/// incomplete.
EquationSystem simplify_symmetric_regular(const EquationSystem& sys, const Presentation& p);

struct SystemSolution {
  std::vector<PowerSeries> unknowns;
  PowerSeries total;
};

/// Unique solution with y_i(0) = 0 to the given order by fixed-point
/// iteration. Throws HypothesisError for systems that are not well founded.
SystemSolution solve_series(const EquationSystem& sys, int order);

struct AlgebraicEquation {
  Polynomial q{2};        // over (z, Y)
  int degree_bound = 0;   // product of squared right-hand-side degrees
  int verified_order = 0;
  int spare = 0;          // coefficients checked beyond deg_z + deg_Y

  int y_degree() const { return q.degree(1); }
  std::string format() const;  // "... = 0"
};

/// Eliminates the unknowns of a polynomial system and returns the factor of
/// the eliminant that annihilates the total series. Throws Error when the
/// system has more than max_unknowns unknowns or no factor is found.
AlgebraicEquation eliminate(const EquationSystem& sys, int max_unknowns = 6);

/// The differentiated C-system: one constraint y_i' - z_coef - sum of
/// coef * y_first' * (product of the rest) per unknown. Unknown j appears
/// as vars (j, 0) and (j, 1).
std::vector<DiffPolynomial> ode_from_system(const EquationSystem& sys);

}  // namespace operad
