#pragma once

// Dimensions of monomial operads by counting the tree monomials that avoid
// a forbidden set of divisors. This is the brute-force oracle the equation
// and bound modules are tested against.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "operad/groebner.hpp"
#include "operad/presentation.hpp"

namespace operad {

enum class DimTag {
  exact,
  certified_below_cap,  // exact, below the arity cap of a truncated completion
  upper_bound,          // counted from a partial Groebner basis
};

std::string_view to_string(DimTag tag);

struct DimRow {
  int arity = 1;
  Integer dim;
  DimTag tag = DimTag::exact;
};

struct DimTable {
  std::vector<DimRow> rows;  // arities 1..max_arity(), consecutive
  int requested = 0;         // arity asked for
  bool budget_exhausted = false;

  int max_arity() const { return static_cast<int>(rows.size()); }
  const Integer& dim(int arity) const;
  std::vector<Integer> dims() const;  // index = arity, dims()[0] = 0
  /// "arity\tdim\ttag" lines with a header line.
  std::string to_tsv() const;
};

/// Counts of normal monomials for arities 1..n_max. The budget bounds the
/// number of vertices built; when it runs out the completed arities are
/// returned and budget_exhausted is set.
DimTable normal_dims(Mode mode, const Signature& sig, std::span<const TreeMonomial> forbidden,
                     int n_max, std::uint64_t budget = 10'000'000);
DimTable normal_dims(const Presentation& p, int n_max, std::uint64_t budget = 10'000'000);

/// The normal monomials of arity n themselves (explicit enumeration).
std::vector<TreeMonomial> normal_monomials(Mode mode, const Signature& sig,
                                           std::span<const TreeMonomial> forbidden, int n);

/// Dimensions of an arbitrary presentation: monomial input is counted
/// directly, otherwise through the leading monomials of a truncated
/// Groebner basis (exact below the cap, an upper bound at and beyond it).
DimTable dims_of_quotient(const Presentation& p, const MonomialOrder& order,
                          const GroebnerOptions& options, int n_max);

/// Maximal depth of the forbidden monomials (0 when there are none).
int relation_level(std::span<const TreeMonomial> forbidden);

/// The stamp class of a monomial: its shape cut to max(level - 1, 0) levels.
TreeMonomial stamp_of(const TreeMonomial& m, int level);

}  // namespace operad
