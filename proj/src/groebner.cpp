#include "operad/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_set>

namespace operad {

namespace {

using TrailKey = std::tuple<std::size_t, TreeMonomial, Occurrence>;
using TrailMap = std::map<TrailKey, Rational>;

void trail_add(TrailMap& t, TrailKey key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

Occurrence map_occurrence(const Occurrence& o, const std::vector<std::size_t>& pm) {
  Occurrence r;
  r.root = pm[o.root];
  for (auto p : o.internal) r.internal.push_back(pm[p]);
  for (auto p : o.cuts) r.cuts.push_back(pm[p]);
  return r;
}

TrailMap seed_trail(std::size_t index, const TreeMonomial& lm) {
  TrailMap t;
  t.emplace(TrailKey{index, lm, whole(lm)}, Rational(1));
  return t;
}

Trail to_trail(const TrailMap& t) {
  Trail out;
  for (const auto& [key, c] : t) {
    out.push_back(TrailStep{c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  }
  return out;
}

struct Tracked {
  OperadElement value;
  TrailMap trail;
};

struct Reducer {
  const OperadElement* element;
  const TreeMonomial* lm;
  const TrailMap* trail;
};

class Engine {
 public:
  Engine(const MonomialOrder& order, std::uint64_t budget) : order_(order), budget_(budget) {}

  std::uint64_t work() const { return work_; }

  void charge(std::size_t n) {
    work_ += n;
    if (work_ > budget_) throw BudgetExceeded("Groebner budget of " + std::to_string(budget_) +
                                              " vertices exhausted");
  }

  TrailMap lift_trail(const TrailMap& t, const TreeMonomial& host, const Occurrence& occ,
                      const Rational& scale) {
    TrailMap out;
    std::vector<std::size_t> pm;
    for (const auto& [key, c] : t) {
      const auto& [rel, h, o] = key;
      TreeMonomial nh = substitute(host, occ, h, &pm);
      charge(nh.size());
      trail_add(out, TrailKey{rel, std::move(nh), map_occurrence(o, pm)}, scale * c);
    }
    return out;
  }

  void add_trail(TrailMap& into, const TrailMap& from) {
    for (const auto& [key, c] : from) trail_add(into, key, c);
  }

  OperadElement lift_charged(const OperadElement& r, const TreeMonomial& host,
                             const Occurrence& occ) {
    OperadElement out = lift(r, host, occ);
    charge(host.size() * r.size());
    return out;
  }

  void reduce(Tracked& f, const std::vector<Reducer>& rs, bool track) {
    std::optional<TreeMonomial> ceiling;
    std::unordered_set<TreeMonomial, TreeMonomialHash> irreducible;
    for (;;) {
      const TreeMonomial* best = nullptr;
      std::size_t best_r = 0;
      Occurrence best_occ;
      for (const auto& [m, c] : f.value.terms()) {
        if (ceiling && !order_.less(m, *ceiling)) continue;
        if (best && order_.less(m, *best)) continue;
        if (irreducible.count(m)) continue;
        TreeIndex idx(m);
        bool found = false;
        for (std::size_t r = 0; r < rs.size() && !found; ++r) {
          const TreeMonomial& q = *rs[r].lm;
          if (q.arity() > m.arity() || q.weight() > m.weight()) continue;
          for (std::size_t a = 0; a < m.size(); ++a) {
            if (m[a].is_leaf() || m[a].gen != q[0].gen) continue;
            if (auto occ = match_at(q, m, a, idx)) {
              best = &m;
              best_r = r;
              best_occ = std::move(*occ);
              found = true;
              break;
            }
          }
        }
        if (!found) irreducible.insert(m);
      }
      if (!best) return;
      const TreeMonomial m = *best;
      const Rational c = f.value.coefficient(m);
      OperadElement l = lift_charged(*rs[best_r].element, m, best_occ);
      l *= c;
      f.value -= l;
      if (track) add_trail(f.trail, lift_trail(*rs[best_r].trail, m, best_occ, -c));
      ceiling = m;
    }
  }

 private:
  const MonomialOrder& order_;
  std::uint64_t budget_;
  std::uint64_t work_ = 0;
};

// Overlays inner onto outer with inner's root at outer position v. Both are
// planar shapes; returns the merged shape and the position of v in it.
std::optional<std::pair<TreeMonomial, std::size_t>> overlay(const TreeMonomial& outer,
                                                           std::size_t v,
                                                           const TreeMonomial& inner) {
  TreeIndex oi(outer), ii(inner);
  std::vector<Vertex> out;
  std::size_t v_pos = 0;
  bool ok = true;
  auto copy = [&](const TreeMonomial& t, const TreeIndex& idx, std::size_t p) {
    auto vs = t.vertices();
    out.insert(out.end(), vs.begin() + static_cast<long>(p), vs.begin() + static_cast<long>(idx.end[p]));
  };
  std::function<void(std::size_t, std::size_t)> both = [&](std::size_t po, std::size_t pi) {
    if (!ok) return;
    if (inner[pi].is_leaf()) return copy(outer, oi, po);
    if (outer[po].is_leaf()) return copy(inner, ii, pi);
    if (outer[po].gen != inner[pi].gen) {
      ok = false;
      return;
    }
    out.push_back(outer[po]);
    std::size_t co = po + 1, ci = pi + 1;
    for (int k = 0; k < outer[po].value; ++k) {
      both(co, ci);
      co = oi.end[co];
      ci = ii.end[ci];
    }
  };
  std::function<void(std::size_t)> walk = [&](std::size_t po) {
    if (!ok) return;
    if (po == v) {
      v_pos = out.size();
      return both(po, 0);
    }
    out.push_back(outer[po]);
    if (outer[po].is_leaf()) return;
    for (std::size_t c = po + 1; c < oi.end[po]; c = oi.end[c]) walk(c);
  };
  walk(0);
  if (!ok) return std::nullopt;
  return std::make_pair(TreeMonomial::from_vertices(std::move(out), Mode::planar), v_pos);
}

using Multiple = std::tuple<TreeMonomial, Occurrence, Occurrence>;

std::vector<Multiple> common_multiples(const TreeMonomial& a, const TreeMonomial& b, int cap,
                                       bool same) {
  std::set<Multiple> out;
  for (int orient = 0; orient < 2; ++orient) {
    const TreeMonomial& outer = orient == 0 ? a : b;
    const TreeMonomial& inner = orient == 0 ? b : a;
    const TreeMonomial os = outer.shape(), is = inner.shape();
    for (std::size_t v = 0; v < os.size(); ++v) {
      if (os[v].is_leaf() || os[v].gen != is[0].gen) continue;
      auto ov = overlay(os, v, is);
      if (!ov || ov->first.arity() > cap) continue;
      std::vector<TreeMonomial> candidates;
      if (a.mode() == Mode::planar) {
        candidates.push_back(ov->first);
      } else {
        candidates = shuffle_labellings(ov->first);
      }
      for (const auto& m : candidates) {
        TreeIndex idx(m);
        auto o_outer = match_at(outer, m, 0, idx);
        if (!o_outer) continue;
        auto o_inner = match_at(inner, m, ov->second, idx);
        if (!o_inner) continue;
        Occurrence oa = orient == 0 ? *o_outer : *o_inner;
        Occurrence ob = orient == 0 ? *o_inner : *o_outer;
        if (same && !(oa < ob)) continue;
        out.emplace(m, std::move(oa), std::move(ob));
      }
    }
  }
  return {out.begin(), out.end()};
}

struct Entry {
  OperadElement value;
  TreeMonomial lm;
  TrailMap trail;
};

bool arity_then_order_less(const MonomialOrder& order, const TreeMonomial& a,
                           const TreeMonomial& b) {
  if (a.arity() != b.arity()) return a.arity() < b.arity();
  return order.less(a, b);
}

}  // namespace

OperadElement evaluate_trail(const Trail& trail, std::span<const OperadElement> relations) {
  OperadElement out;
  for (const auto& step : trail) {
    if (step.relation >= relations.size()) throw Error("trail refers to an unknown relation");
    OperadElement l = lift(relations[step.relation], step.host, step.occ);
    l *= step.coef;
    out += l;
  }
  return out;
}

OperadElement reduce(const OperadElement& f, std::span<const OperadElement> basis,
                     const MonomialOrder& order, Trail* trail) {
  std::vector<TreeMonomial> lms;
  std::vector<TrailMap> seeds;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto [lm, lc] = basis[i].leading(order);
    if (lc != 1) throw Error("reduce: basis elements must be monic");
    lms.push_back(lm);
    seeds.push_back(seed_trail(i, lm));
  }
  std::vector<Reducer> rs;
  for (std::size_t i = 0; i < basis.size(); ++i) rs.push_back({&basis[i], &lms[i], &seeds[i]});
  Engine eng(order, UINT64_MAX);
  Tracked t{f, {}};
  eng.reduce(t, rs, trail != nullptr);
  if (trail) {
    // The trail accumulated -(f - result); report f - result.
    *trail = to_trail(t.trail);
    for (auto& s : *trail) s.coef = -s.coef;
  }
  return t.value;
}

std::vector<Overlap> overlaps(const OperadElement& f, const OperadElement& g,
                              const MonomialOrder& order, int arity_cap) {
  std::vector<Overlap> out;
  if (f.is_zero() || g.is_zero()) return out;
  const TreeMonomial a = f.leading(order).first, b = g.leading(order).first;
  for (auto& [m, oa, ob] : common_multiples(a, b, arity_cap, f == g)) {
    OperadElement s = lift(f, m, oa) - lift(g, m, ob);
    out.push_back(Overlap{m, oa, ob, std::move(s)});
  }
  return out;
}

std::vector<TreeMonomial> GroebnerResult::leading_monomials(const MonomialOrder& order) const {
  std::vector<TreeMonomial> out;
  for (const auto& b : basis) out.push_back(b.leading(order).first);
  return out;
}

GroebnerResult buchberger(std::span<const OperadElement> relations, const MonomialOrder& order,
                          const GroebnerOptions& options) {
  Engine eng(order, options.budget);
  GroebnerResult result;
  result.arity_cap = options.arity_cap;

  std::vector<std::optional<Entry>> basis;
  std::vector<Tracked> pending;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].is_zero()) continue;
    pending.push_back(Tracked{relations[i], seed_trail(i, relations[i].leading(order).first)});
  }

  auto reducers = [&](std::optional<std::size_t> skip = std::nullopt) {
    std::vector<Reducer> rs;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k] && k != skip) rs.push_back({&basis[k]->value, &basis[k]->lm, &basis[k]->trail});
    }
    return rs;
  };

  auto insert = [&](Tracked t) {
    Rational lc = t.value.make_monic(order);
    if (lc != 1) {
      TrailMap scaled;
      for (auto& [key, c] : t.trail) scaled.emplace(key, c / lc);
      t.trail = std::move(scaled);
    }
    TreeMonomial lm = t.value.leading(order).first;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k] && divides(lm, basis[k]->lm)) {
        pending.push_back(Tracked{std::move(basis[k]->value), std::move(basis[k]->trail)});
        basis[k].reset();
      }
    }
    std::erase_if(pairs, [&](const auto& pr) { return !basis[pr.first] || !basis[pr.second]; });
    const std::size_t n = basis.size();
    basis.push_back(Entry{std::move(t.value), lm, std::move(t.trail)});
    for (std::size_t k = 0; k < n; ++k) {
      if (basis[k]) pairs.emplace_back(k, n);
    }
    pairs.emplace_back(n, n);
  };

  try {
    for (;;) {
      if (!pending.empty()) {
        std::erase_if(pending, [](const Tracked& t) { return t.value.is_zero(); });
        if (pending.empty()) continue;
        std::size_t pick = 0;
        TreeMonomial best = pending[0].value.leading(order).first;
        for (std::size_t i = 1; i < pending.size(); ++i) {
          TreeMonomial lm = pending[i].value.leading(order).first;
          if (arity_then_order_less(order, lm, best)) {
            best = lm;
            pick = i;
          }
        }
        Tracked t = std::move(pending[pick]);
        pending.erase(pending.begin() + static_cast<long>(pick));
        eng.reduce(t, reducers(), true);
        if (!t.value.is_zero()) insert(std::move(t));
        continue;
      }
      if (pairs.empty()) break;
      auto todo = std::move(pairs);
      pairs.clear();
      for (auto [i, j] : todo) {
        if (!basis[i] || !basis[j]) continue;
        const Entry& f = *basis[i];
        const Entry& g = *basis[j];
        for (auto& [m, oa, ob] : common_multiples(f.lm, g.lm, options.arity_cap, i == j)) {
          Tracked s;
          s.value = eng.lift_charged(f.value, m, oa) - eng.lift_charged(g.value, m, ob);
          s.trail = eng.lift_trail(f.trail, m, oa, 1);
          eng.add_trail(s.trail, eng.lift_trail(g.trail, m, ob, -1));
          pending.push_back(std::move(s));
        }
      }
    }
    // Tail reduction; leading monomials are already inter-reduced.
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!basis[k]) continue;
      Tracked t{basis[k]->value, basis[k]->trail};
      eng.reduce(t, reducers(k), true);
      basis[k]->value = std::move(t.value);
      basis[k]->trail = std::move(t.trail);
    }
  } catch (const BudgetExceeded&) {
    result.budget_exhausted = true;
  }

  std::vector<Entry> alive;
  for (auto& e : basis) {
    if (e) alive.push_back(std::move(*e));
  }
  std::sort(alive.begin(), alive.end(), [&](const Entry& x, const Entry& y) {
    return arity_then_order_less(order, x.lm, y.lm);
  });
  int max_arity = 0;
  for (auto& e : alive) {
    max_arity = std::max(max_arity, e.value.arity());
    result.basis.push_back(std::move(e.value));
    result.trails.push_back(to_trail(e.trail));
  }
  result.work = eng.work();
  result.complete_below_cap = !result.budget_exhausted && max_arity < options.arity_cap;
  result.finite = result.complete_below_cap && options.arity_cap > 2 * max_arity;
  return result;
}

GroebnerResult buchberger(const Presentation& p, const MonomialOrder& order,
                          const GroebnerOptions& options) {
  return buchberger(p.relations, order, options);
}

Presentation leading_monomials(const GroebnerResult& g, const Presentation& p,
                               const MonomialOrder& order) {
  return monomial_presentation(p.mode, p.signature, g.leading_monomials(order));
}

}  // namespace operad
