#pragma once

// Shared helpers for the unit tests: deterministic random monomials and
// regions.

#include <algorithm>
#include <random>
#include <vector>

#include <map>

#include "operad/element.hpp"
#include "operad/presentation.hpp"

namespace operad::testing {

inline Signature binary_signature(int count) {
  std::vector<Generator> gens;
  const char* names[] = {"m", "n", "p", "q"};
  for (int i = 0; i < count; ++i) gens.push_back({names[i], 2});
  return Signature(gens);
}

inline TreeMonomial random_monomial(const Signature& sig, int n, Mode mode, std::mt19937& rng) {
  auto shapes = planar_shapes(sig, n);
  const auto& s = shapes[std::uniform_int_distribution<std::size_t>(0, shapes.size() - 1)(rng)];
  if (mode == Mode::planar) return s;
  auto ls = shuffle_labellings(s);
  return ls[std::uniform_int_distribution<std::size_t>(0, ls.size() - 1)(rng)];
}

/// A random connected region of host rooted at an internal vertex.
inline Occurrence random_region(const TreeMonomial& host, std::mt19937& rng) {
  TreeIndex idx(host);
  std::vector<std::size_t> internal;
  for (std::size_t p = 0; p < host.size(); ++p) {
    if (!host[p].is_leaf()) internal.push_back(p);
  }
  Occurrence occ;
  occ.root = internal[std::uniform_int_distribution<std::size_t>(0, internal.size() - 1)(rng)];
  std::vector<std::size_t> cuts;
  std::vector<std::size_t> stack{occ.root};
  std::bernoulli_distribution keep(0.5);
  while (!stack.empty()) {
    std::size_t p = stack.back();
    stack.pop_back();
    occ.internal.push_back(p);
    auto kids = host.children(p, idx);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      if (!host[*it].is_leaf() && keep(rng)) {
        stack.push_back(*it);
      } else {
        cuts.push_back(*it);
      }
    }
  }
  std::sort(occ.internal.begin(), occ.internal.end());
  std::sort(cuts.begin(), cuts.end(),
            [&](std::size_t a, std::size_t b) { return idx.min_label[a] < idx.min_label[b]; });
  occ.cuts = cuts;
  return occ;
}

/// Dimensions of the quotient by rank: the arity-n part of the ideal is
/// spanned by the relations placed at every occurrence of their leading
/// monomials in every free monomial of arity n. Entry n of the result is
/// dim P(n); entry 0 is 0.
inline std::vector<Integer> quotient_dims_by_rank(const Presentation& p, int n_max) {
  const auto order = p.order();
  std::vector<Integer> dims(1, Integer(0));
  for (int n = 1; n <= n_max; ++n) {
    const auto basis = enumerate_free(p.signature, n, p.mode);
    std::map<TreeMonomial, int> column;
    for (const auto& m : basis) column.emplace(m, static_cast<int>(column.size()));
    // Sparse rows keyed by their first column, reduced on insertion.
    std::map<int, std::map<int, Rational>> pivots;
    auto insert = [&](std::map<int, Rational> row) {
      while (!row.empty()) {
        auto [lead, c] = *row.begin();
        auto it = pivots.find(lead);
        if (it == pivots.end()) {
          pivots.emplace(lead, std::move(row));
          return;
        }
        const Rational f = c / it->second.at(lead);
        for (const auto& [k, v] : it->second) {
          Rational& slot = row[k];
          slot -= f * v;
          if (slot == 0) row.erase(k);
        }
      }
    };
    for (const auto& r : p.relations) {
      if (r.is_zero() || r.arity() > n) continue;
      const auto lead = r.leading(order).first;
      for (const auto& host : basis) {
        for (const auto& occ : occurrences(lead, host)) {
          std::map<int, Rational> row;
          const auto lifted = lift(r, host, occ);
          for (const auto& [m, c] : lifted.terms()) row[column.at(m)] = c;
          insert(std::move(row));
        }
      }
    }
    dims.push_back(Integer(static_cast<long>(basis.size() - pivots.size())));
  }
  return dims;
}

}  // namespace operad::testing
