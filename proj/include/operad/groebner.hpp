#pragma once

// Reduction, overlaps and truncated Buchberger completion in free planar
// and shuffle operads.

#include <cstdint>
#include <span>
#include <vector>

#include "operad/element.hpp"
#include "operad/presentation.hpp"

namespace operad {

/// One summand coef * lift(relations[relation], host, occ) of an ideal
/// membership certificate.
struct TrailStep {
  Rational coef;
  std::size_t relation = 0;
  TreeMonomial host;
  Occurrence occ;
};
using Trail = std::vector<TrailStep>;

/// Re-evaluates a certificate from the input relations.
OperadElement evaluate_trail(const Trail& trail, std::span<const OperadElement> relations);

/// Normal form of f modulo the monic elements of basis. When trail is given
/// it receives a certificate of f - result in terms of the basis elements
/// (relation index = position in basis).
OperadElement reduce(const OperadElement& f, std::span<const OperadElement> basis,
                     const MonomialOrder& order, Trail* trail = nullptr);

/// A small common multiple of two leading monomials and the resulting
/// S-element lift(f, lcm, first) - lift(g, lcm, second).
struct Overlap {
  TreeMonomial lcm;
  Occurrence first;
  Occurrence second;
  OperadElement s;
};

/// Overlaps of the leading monomials of the monic elements f and g whose
/// occurrences share an internal vertex, up to the arity cap. For f == g the
/// trivial overlap of lm(f) with itself is skipped.
std::vector<Overlap> overlaps(const OperadElement& f, const OperadElement& g,
                              const MonomialOrder& order, int arity_cap);

struct GroebnerOptions {
  int arity_cap = 8;
  /// Upper bound on the number of monomial vertices produced while lifting.
  std::uint64_t budget = 10'000'000;
};

struct GroebnerResult {
  std::vector<OperadElement> basis;  // monic, sorted by arity then leading monomial
  std::vector<Trail> trails;         // trails[i] certifies basis[i] from the input relations
  int arity_cap = 0;
  /// Every overlap of arity <= cap reduced to zero and no basis element has
  /// arity >= cap. Dimensions are certified for arities < cap either way
  /// unless the budget ran out.
  bool complete_below_cap = false;
  bool budget_exhausted = false;
  /// The cap exceeds twice the largest basis arity, so every overlap of the
  /// basis was examined: the basis is a finite Groebner basis.
  bool finite = false;
  std::uint64_t work = 0;

  std::vector<TreeMonomial> leading_monomials(const MonomialOrder& order) const;
};

GroebnerResult buchberger(std::span<const OperadElement> relations, const MonomialOrder& order,
                          const GroebnerOptions& options = {});
GroebnerResult buchberger(const Presentation& p, const MonomialOrder& order,
                          const GroebnerOptions& options = {});

/// The monomial presentation on the leading monomials of the basis.
Presentation leading_monomials(const GroebnerResult& g, const Presentation& p,
                               const MonomialOrder& order);

}  // namespace operad
