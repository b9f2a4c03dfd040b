#include "operad/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace operad {

std::string_view to_string(DimTag tag) {
  switch (tag) {
    case DimTag::exact:
      return "exact";
    case DimTag::certified_below_cap:
      return "certified-below-cap";
    case DimTag::upper_bound:
      return "upper-bound";
  }
  return "?";
}

const Integer& DimTable::dim(int arity) const {
  if (arity < 1 || arity > max_arity()) {
    throw Error("no dimension computed for arity " + std::to_string(arity));
  }
  return rows[static_cast<std::size_t>(arity - 1)].dim;
}

std::vector<Integer> DimTable::dims() const {
  std::vector<Integer> out{Integer(0)};
  for (const auto& r : rows) out.push_back(r.dim);
  return out;
}

std::string DimTable::to_tsv() const {
  std::string out = "arity\tdim\ttag\n";
  for (const auto& r : rows) {
    out += std::to_string(r.arity) + "\t" + r.dim.get_str() + "\t" + std::string(to_string(r.tag)) + "\n";
  }
  return out;
}

int relation_level(std::span<const TreeMonomial> forbidden) {
  int level = 0;
  for (const auto& m : forbidden) level = std::max(level, m.depth());
  return level;
}

TreeMonomial stamp_of(const TreeMonomial& m, int level) {
  return truncate_shape(m, std::max(level - 1, 0));
}

namespace {

struct OutOfBudget {};

// Compositions of n into k positive parts.
void for_each_composition(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> parts(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      parts[static_cast<std::size_t>(i)] = left;
      f(parts);
      return;
    }
    for (int a = 1; a <= left - (k - 1 - i); ++a) {
      parts[static_cast<std::size_t>(i)] = a;
      rec(i + 1, left - a);
    }
  };
  if (k >= 1 && n >= k) rec(0, n);
}

// All ways to split the labels 1..n into blocks of the given sizes, the
// first block containing label 1. Blocks are sorted.
std::vector<std::vector<std::vector<std::int32_t>>> label_distributions(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  std::vector<std::vector<std::vector<std::int32_t>>> out;
  std::vector<std::vector<std::int32_t>> blocks(sizes.size());
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);

  std::function<void(std::size_t)> next_block;
  std::function<void(std::size_t, std::int32_t, int)> choose = [&](std::size_t b, std::int32_t from, int need) {
    if (need == 0) {
      next_block(b + 1);
      return;
    }
    for (std::int32_t l = from; l <= n; ++l) {
      if (used[static_cast<std::size_t>(l)]) continue;
      used[static_cast<std::size_t>(l)] = 1;
      blocks[b].push_back(l);
      choose(b, l + 1, need - 1);
      blocks[b].pop_back();
      used[static_cast<std::size_t>(l)] = 0;
    }
  };
  next_block = [&](std::size_t b) {
    if (b == sizes.size()) {
      out.push_back(blocks);
      return;
    }
    if (b == 0) {
      used[1] = 1;
      blocks[0].push_back(1);
      choose(0, 2, sizes[0] - 1);
      blocks[0].pop_back();
      used[1] = 0;
    } else {
      choose(b, 1, sizes[b]);
    }
  };
  next_block(0);
  return out;
}

class ShuffleEnumerator {
 public:
  ShuffleEnumerator(const Signature& sig, std::span<const TreeMonomial> forbidden, std::uint64_t budget)
      : sig_(sig), forbidden_(forbidden.begin(), forbidden.end()), budget_(budget) {
    levels_.emplace_back();
    levels_.push_back({TreeMonomial::identity(Mode::shuffle)});
  }

  // Normal monomials of arity n, given all smaller arities.
  void generate(int n, bool keep, Integer& count) {
    std::vector<TreeMonomial> kept;
    for (std::size_t g = 0; g < sig_.size(); ++g) {
      const int k = sig_[g].arity;
      for_each_composition(n, k, [&](const std::vector<int>& sizes) {
        const auto dists = label_distributions(sizes);
        std::vector<std::size_t> pick(sizes.size(), 0);
        bool done = false;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
          if (levels_[static_cast<std::size_t>(sizes[i])].empty()) done = true;
        }
        while (!done) {
          for (const auto& blocks : dists) {
            std::vector<Vertex> v{Vertex{static_cast<std::int32_t>(g), k}};
            for (std::size_t i = 0; i < sizes.size(); ++i) {
              const auto& child = levels_[static_cast<std::size_t>(sizes[i])][pick[i]];
              for (const auto& x : child.vertices()) {
                v.push_back(x.is_leaf() ? Vertex{kLeaf, blocks[i][static_cast<std::size_t>(x.value - 1)]} : x);
              }
            }
            charge(v.size());
            auto m = TreeMonomial::from_vertices_unchecked(std::move(v), Mode::shuffle);
            if (divides_at_root(forbidden_, m)) continue;
            ++count;
            if (keep) kept.push_back(std::move(m));
          }
          // Advance the odometer over child tuples.
          std::size_t i = 0;
          for (; i < sizes.size(); ++i) {
            if (++pick[i] < levels_[static_cast<std::size_t>(sizes[i])].size()) break;
            pick[i] = 0;
          }
          done = i == sizes.size();
        }
      });
    }
    levels_.push_back(std::move(kept));
  }

  const std::vector<TreeMonomial>& level(int n) const { return levels_[static_cast<std::size_t>(n)]; }

 private:
  void charge(std::size_t v) {
    used_ += v;
    if (used_ > budget_) throw OutOfBudget{};
  }

  const Signature& sig_;
  std::vector<TreeMonomial> forbidden_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  std::vector<std::vector<TreeMonomial>> levels_;
};

// Planar counting over truncated-shape states: whether g(children) has a
// forbidden divisor at its root depends only on the top level-1 levels of
// each child.
class PlanarCounter {
 public:
  PlanarCounter(const Signature& sig, std::span<const TreeMonomial> forbidden, std::uint64_t budget)
      : sig_(sig), forbidden_(forbidden.begin(), forbidden.end()), budget_(budget),
        levels_(std::max(relation_level(forbidden) - 1, 0)) {
    counts_.emplace_back();
    counts_.push_back({{state_id(TreeMonomial::identity(Mode::planar)), Integer(1)}});
  }

  Integer generate(int n) {
    std::map<int, Integer> next;
    for (std::size_t g = 0; g < sig_.size(); ++g) {
      const int k = sig_[g].arity;
      std::vector<int> states(static_cast<std::size_t>(k));
      std::function<void(int, int, const Integer&)> rec = [&](int i, int left, const Integer& mult) {
        if (i == k) {
          if (left != 0) return;
          int s = admit(static_cast<int>(g), states);
          if (s >= 0) next[s] += mult;
          return;
        }
        const int rest = k - 1 - i;
        for (int a = 1; a <= left - rest; ++a) {
          if (i == k - 1 && a != left) continue;
          for (const auto& [s, c] : counts_[static_cast<std::size_t>(a)]) {
            states[static_cast<std::size_t>(i)] = s;
            rec(i + 1, left - a, mult * c);
          }
        }
      };
      rec(0, n, Integer(1));
    }
    Integer total = 0;
    for (const auto& [s, c] : next) total += c;
    counts_.push_back(std::move(next));
    return total;
  }

 private:
  int state_id(const TreeMonomial& shape) {
    auto [it, inserted] = ids_.try_emplace(shape, static_cast<int>(shapes_.size()));
    if (inserted) shapes_.push_back(shape);
    return it->second;
  }

  int admit(int g, const std::vector<int>& states) {
    if (++used_ > budget_) throw OutOfBudget{};
    std::vector<int> key{g};
    key.insert(key.end(), states.begin(), states.end());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<TreeMonomial> children;
    for (int s : states) children.push_back(shapes_[static_cast<std::size_t>(s)]);
    auto candidate = graft(g, static_cast<int>(states.size()), children, Mode::planar);
    int out = divides_at_root(forbidden_, candidate) ? -1 : state_id(truncate_shape(candidate, levels_));
    cache_.emplace(std::move(key), out);
    return out;
  }

  const Signature& sig_;
  std::vector<TreeMonomial> forbidden_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  int levels_;
  std::map<TreeMonomial, int> ids_;
  std::vector<TreeMonomial> shapes_;
  std::vector<std::map<int, Integer>> counts_;
  std::map<std::vector<int>, int> cache_;
};

void check_forbidden(Mode mode, std::span<const TreeMonomial> forbidden) {
  for (const auto& m : forbidden) {
    if (m.mode() != mode) throw Error("forbidden monomial of the wrong mode");
  }
}

}  // namespace

DimTable normal_dims(Mode mode, const Signature& sig, std::span<const TreeMonomial> forbidden,
                     int n_max, std::uint64_t budget) {
  check_forbidden(mode, forbidden);
  DimTable table;
  table.requested = n_max;
  const bool id_forbidden =
      std::any_of(forbidden.begin(), forbidden.end(), [](const auto& m) { return m.is_identity(); });
  if (id_forbidden) {
    for (int n = 1; n <= n_max; ++n) table.rows.push_back({n, Integer(0), DimTag::exact});
    return table;
  }
  try {
    if (mode == Mode::planar) {
      PlanarCounter counter(sig, forbidden, budget);
      for (int n = 1; n <= n_max; ++n) {
        Integer d = n == 1 ? Integer(1) : counter.generate(n);
        table.rows.push_back({n, d, DimTag::exact});
      }
    } else {
      ShuffleEnumerator en(sig, forbidden, budget);
      for (int n = 1; n <= n_max; ++n) {
        Integer d = 1;
        if (n > 1) {
          d = 0;
          en.generate(n, n < n_max, d);
        }
        table.rows.push_back({n, d, DimTag::exact});
      }
    }
  } catch (const OutOfBudget&) {
    table.budget_exhausted = true;
  }
  return table;
}

DimTable normal_dims(const Presentation& p, int n_max, std::uint64_t budget) {
  auto ms = p.monomials();
  return normal_dims(p.mode, p.signature, ms, n_max, budget);
}

std::vector<TreeMonomial> normal_monomials(Mode mode, const Signature& sig,
                                           std::span<const TreeMonomial> forbidden, int n) {
  check_forbidden(mode, forbidden);
  std::vector<TreeMonomial> out;
  for_each_free(sig, n, mode, [&](const TreeMonomial& m) {
    bool bad = std::any_of(forbidden.begin(), forbidden.end(),
                           [&](const TreeMonomial& q) { return divides(q, m); });
    if (!bad) out.push_back(m);
    return true;
  });
  return out;
}

DimTable dims_of_quotient(const Presentation& p, const MonomialOrder& order,
                          const GroebnerOptions& options, int n_max) {
  if (p.is_monomial()) {
    auto ms = p.monomials();
    auto reduced = inter_reduce(ms);
    return normal_dims(p.mode, p.signature, reduced, n_max, options.budget);
  }
  auto g = buchberger(p, order, options);
  auto lms = g.leading_monomials(order);
  auto table = normal_dims(p.mode, p.signature, lms, n_max, options.budget);
  for (auto& r : table.rows) {
    if (g.finite && !g.budget_exhausted) {
      r.tag = DimTag::exact;
    } else if (!g.budget_exhausted && r.arity < options.arity_cap) {
      r.tag = DimTag::certified_below_cap;
    } else {
      r.tag = DimTag::upper_bound;
    }
  }
  table.budget_exhausted = table.budget_exhausted || g.budget_exhausted;
  return table;
}

}  // namespace operad
