#include "operad/equations.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace operad {

namespace {

Polynomial var(int nvars, int v) { return Polynomial::variable(nvars, v); }

// Removes variable v (which must not occur) from p.
Polynomial drop_variable(const Polynomial& p, int v) {
  Polynomial out(p.nvars() - 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[static_cast<std::size_t>(v)] != 0) throw Error("drop_variable: variable still occurs");
    Polynomial::Exponents f = e;
    f.erase(f.begin() + v);
    out.add_term(f, c);
  }
  return out;
}

// Re-indexes p into nvars variables; old variable i becomes map[i].
Polynomial remap(const Polynomial& p, int nvars, const std::vector<int>& map) {
  Polynomial out(nvars);
  for (const auto& [e, c] : p.terms()) {
    Polynomial::Exponents f(static_cast<std::size_t>(nvars), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] < 0) throw Error("remap: variable has no image");
      f[static_cast<std::size_t>(map[i])] += e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

std::string monomial_text(const Polynomial::Exponents& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

// Terms by total degree, then descending powers of the first variable.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Polynomial::Exponents, Rational>> ts(p.terms().begin(), p.terms().end());
  auto degree = [](const Polynomial::Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
  };
  std::stable_sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
    if (degree(a.first) != degree(b.first)) return degree(a.first) < degree(b.first);
    return std::lexicographical_compare(b.first.begin(), b.first.end(), a.first.begin(), a.first.end());
  });
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& [e, c] = ts[i];
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    Rational a = abs(c);
    std::string mono = monomial_text(e, names);
    if (mono.empty()) {
      out += format_rational(a);
    } else {
      out += a == 1 ? mono : format_rational(a) + "*" + mono;
    }
  }
  return out;
}

std::vector<std::string> variable_names(const EquationSystem& sys) {
  std::vector<std::string> names{"z"};
  names.insert(names.end(), sys.names.begin(), sys.names.end());
  return names;
}

std::vector<TreeMonomial> shapes_up_to_depth(const Signature& sig, int depth) {
  std::vector<TreeMonomial> out{TreeMonomial::identity(Mode::planar)};
  if (depth <= 0) return out;
  auto below = shapes_up_to_depth(sig, depth - 1);
  for (std::size_t g = 0; g < sig.size(); ++g) {
    const int k = sig[g].arity;
    std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
    for (;;) {
      std::vector<TreeMonomial> kids;
      for (auto i : pick) kids.push_back(below[i]);
      out.push_back(graft(static_cast<int>(g), k, kids, Mode::planar));
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < below.size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
  return out;
}

void require_monomial(const Presentation& p) {
  if (!p.is_monomial()) throw Error("equation systems need a monomial presentation");
}

std::vector<TreeMonomial> relation_shapes(const Presentation& p) {
  std::set<TreeMonomial> out;
  for (const auto& m : p.monomials()) out.insert(m.shape());
  return {out.begin(), out.end()};
}

// Enumerates every admitted one-root extension g(s_0, ..., s_{k-1}) of the
// stamps: its root carries no relation (shape-level test) and its
// truncation is the stamp it contributes to.
void for_each_extension(const Presentation& p, const std::vector<TreeMonomial>& stamps,
                        const std::function<void(int gen, const std::vector<int>& args, int target)>& f) {
  const auto forbidden = relation_shapes(p);
  const int levels = std::max(stamp_level(p) - 1, 0);
  std::map<TreeMonomial, int> index;
  for (std::size_t i = 0; i < stamps.size(); ++i) index.emplace(stamps[i], static_cast<int>(i));
  const auto& sig = p.signature;
  for (std::size_t g = 0; g < sig.size(); ++g) {
    const int k = sig[g].arity;
    std::vector<int> args(static_cast<std::size_t>(k), 0);
    for (;;) {
      std::vector<TreeMonomial> kids;
      for (int a : args) kids.push_back(stamps[static_cast<std::size_t>(a)]);
      auto candidate = graft(static_cast<int>(g), k, kids, Mode::planar);
      if (!divides_at_root(forbidden, candidate)) {
        auto it = index.find(truncate_shape(candidate, levels));
        if (it == index.end()) throw Error("stamp truncation is not a stamp");
        f(static_cast<int>(g), args, it->second);
      }
      std::size_t i = 0;
      for (; i < args.size(); ++i) {
        if (++args[i] < static_cast<int>(stamps.size())) break;
        args[i] = 0;
      }
      if (i == args.size()) break;
    }
  }
}

EquationSystem skeleton(const Presentation& p, EquationSystem::Kind kind, Flavor flavor) {
  EquationSystem sys;
  sys.kind = kind;
  sys.flavor = flavor;
  sys.stamps = stamp_set(p);
  const int n = static_cast<int>(sys.stamps.size());
  for (int i = 0; i < n; ++i) sys.names.push_back("y_" + std::to_string(i));
  sys.total = Polynomial(n + 1);
  for (int i = 0; i < n; ++i) sys.total += var(n + 1, i + 1);
  return sys;
}

}  // namespace

int stamp_level(const Presentation& p) {
  require_monomial(p);
  int level = 0;
  for (const auto& m : p.monomials()) level = std::max(level, m.depth());
  return level;
}

std::vector<TreeMonomial> stamp_set(const Presentation& p) {
  const int levels = std::max(stamp_level(p) - 1, 0);
  const auto relations = p.monomials();
  std::vector<TreeMonomial> out;
  for (const auto& s : shapes_up_to_depth(p.signature, levels)) {
    auto normal = [&](const TreeMonomial& m) {
      return std::none_of(relations.begin(), relations.end(),
                          [&](const TreeMonomial& q) { return divides(q, m); });
    };
    bool keep = false;
    if (p.mode == Mode::planar) {
      keep = normal(s);
    } else {
      for (const auto& l : shuffle_labellings(s)) {
        if (normal(l)) {
          keep = true;
          break;
        }
      }
    }
    if (keep) out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](const TreeMonomial& a, const TreeMonomial& b) {
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    if (a.arity() != b.arity()) return a.arity() < b.arity();
    return a < b;
  });
  return out;
}

EquationSystem build_planar_system(const Presentation& p) {
  require_monomial(p);
  if (p.mode != Mode::planar) throw Error("build_planar_system needs a planar presentation");
  auto sys = skeleton(p, EquationSystem::Kind::polynomial, Flavor::ogf);
  const int nv = sys.size() + 1;
  sys.rhs.assign(static_cast<std::size_t>(sys.size()), Polynomial(nv));
  sys.rhs[0] += var(nv, 0);
  for_each_extension(p, sys.stamps, [&](int, const std::vector<int>& args, int target) {
    Polynomial term = Polynomial::constant(nv, 1);
    for (int a : args) term = term * var(nv, a + 1);
    sys.rhs[static_cast<std::size_t>(target)] += term;
  });
  return sys;
}

EquationSystem build_shuffle_system(const Presentation& p) {
  require_monomial(p);
  if (p.mode != Mode::shuffle) throw Error("build_shuffle_system needs a shuffle presentation");
  const auto relations = p.monomials();
  if (auto w = regularity_witness(relations, Regularity::shuffle)) {
    throw HypothesisError("relations are not shuffle regular: the relabelling " +
                          format_monomial(*w, p.signature) + " is missing");
  }
  auto sys = skeleton(p, EquationSystem::Kind::c_operation, Flavor::egf);
  sys.z_coef.assign(static_cast<std::size_t>(sys.size()), Rational(0));
  sys.z_coef[0] = 1;
  sys.c_terms.resize(static_cast<std::size_t>(sys.size()));
  for_each_extension(p, sys.stamps, [&](int gen, const std::vector<int>& args, int target) {
    sys.c_terms[static_cast<std::size_t>(target)].push_back(CTerm{Rational(1), gen, args});
  });
  return sys;
}

EquationSystem simplify_symmetric_regular(const EquationSystem& sys, const Presentation& p) {
  if (sys.kind != EquationSystem::Kind::c_operation) {
    throw Error("simplify_symmetric_regular needs a C-operation system");
  }
  const auto relations = p.monomials();
  if (auto w = regularity_witness(relations, Regularity::symmetric)) {
    throw HypothesisError("relations are not symmetric regular: " + format_monomial(*w, p.signature) +
                          " is missing");
  }
  const int n = sys.size();
  const int nv = n + 1;
  std::vector<Polynomial> rhs;
  for (int i = 0; i < n; ++i) {
    Polynomial f = sys.z_coef[static_cast<std::size_t>(i)] * var(nv, 0);
    // (gen, sorted children) -> the orderings present with their coefficient.
    std::map<std::pair<int, std::vector<int>>, std::map<std::vector<int>, Rational>> families;
    for (const auto& t : sys.c_terms[static_cast<std::size_t>(i)]) {
      auto key = t.args;
      std::sort(key.begin(), key.end());
      families[{t.gen, key}][t.args] += t.coef;
    }
    for (const auto& [key, present] : families) {
      auto perm = key.second;
      std::size_t orderings = 0;
      const Rational coef = present.begin()->second;
      do {
        ++orderings;
        auto it = present.find(perm);
        if (it == present.end() || it->second != coef) {
          throw Error("pairing fails for the C-terms of " + sys.names[static_cast<std::size_t>(i)]);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (orderings != present.size()) {
        throw Error("pairing fails for the C-terms of " + sys.names[static_cast<std::size_t>(i)]);
      }
      // Summed over all orderings, C(first, rest) gives |O|/k of the product.
      Polynomial prod = Polynomial::constant(nv, coef * Rational(static_cast<long>(orderings)) /
                                                     static_cast<long>(key.second.size()));
      for (int a : key.second) prod = prod * var(nv, a + 1);
      f += prod;
    }
    rhs.push_back(std::move(f));
  }

  EquationSystem out;
  out.kind = EquationSystem::Kind::polynomial;
  out.flavor = sys.flavor;
  out.names = sys.names;
  out.stamps = sys.stamps;
  out.rhs = std::move(rhs);
  out.total = sys.total;

  auto remove_unknown = [&](int i, const Polynomial& value) {
    const int v = i + 1;
    for (auto& f : out.rhs) f = drop_variable(f.substitute(v, value), v);
    out.total = drop_variable(out.total.substitute(v, value), v);
    out.rhs.erase(out.rhs.begin() + i);
    out.names.erase(out.names.begin() + i);
    if (!out.stamps.empty()) out.stamps.erase(out.stamps.begin() + i);
  };
  // Unknowns equal to z.
  for (int i = 0; i < out.size();) {
    const int nvars = out.size() + 1;
    if (out.rhs[static_cast<std::size_t>(i)] == var(nvars, 0)) {
      remove_unknown(i, var(nvars, 0));
    } else {
      ++i;
    }
  }
  // Unknowns with identical right-hand sides coincide.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < out.size() && !changed; ++i) {
      for (int j = i + 1; j < out.size() && !changed; ++j) {
        if (out.rhs[static_cast<std::size_t>(i)] == out.rhs[static_cast<std::size_t>(j)]) {
          remove_unknown(j, var(out.size() + 1, i + 1));
          changed = true;
        }
      }
    }
  }
  return out;
}

namespace {

void check_well_founded(const EquationSystem& sys) {
  const int n = sys.size();
  auto bad = [&](const std::string& why, int i) {
    throw HypothesisError("system is not well founded: " + why + " in the equation of " +
                          sys.names[static_cast<std::size_t>(i)]);
  };
  for (int i = 0; i < n; ++i) {
    if (sys.kind == EquationSystem::Kind::polynomial) {
      for (const auto& [e, c] : sys.rhs[static_cast<std::size_t>(i)].terms()) {
        int ydeg = 0;
        for (std::size_t v = 1; v < e.size(); ++v) ydeg += e[v];
        if (e[0] == 0 && ydeg <= 1) bad(ydeg == 0 ? "constant term" : "linear term without z", i);
      }
    } else {
      for (const auto& t : sys.c_terms[static_cast<std::size_t>(i)]) {
        if (t.args.size() < 2) bad("C-term with a single argument", i);
      }
    }
  }
}

}  // namespace

SystemSolution solve_series(const EquationSystem& sys, int order) {
  check_well_founded(sys);
  const int n = sys.size();
  const PowerSeries z = PowerSeries::z(sys.flavor, order);
  std::vector<PowerSeries> y(static_cast<std::size_t>(n), PowerSeries(sys.flavor, order));
  auto with_z = [&](const std::vector<PowerSeries>& ys) {
    std::vector<PowerSeries> all{z};
    all.insert(all.end(), ys.begin(), ys.end());
    return all;
  };
  // Each round fixes at least one more coefficient.
  for (int round = 0; round <= order; ++round) {
    std::vector<PowerSeries> next;
    auto all = with_z(y);
    for (int i = 0; i < n; ++i) {
      if (sys.kind == EquationSystem::Kind::polynomial) {
        next.push_back(evaluate(sys.rhs[static_cast<std::size_t>(i)], all));
      } else {
        PowerSeries f = sys.z_coef[static_cast<std::size_t>(i)] * z;
        for (const auto& t : sys.c_terms[static_cast<std::size_t>(i)]) {
          PowerSeries rest = PowerSeries::constant(sys.flavor, order, 1);
          for (std::size_t a = 1; a < t.args.size(); ++a) rest = rest * y[static_cast<std::size_t>(t.args[a])];
          f += t.coef * c_operation(y[static_cast<std::size_t>(t.args[0])], rest).truncate(order);
        }
        next.push_back(std::move(f));
      }
    }
    if (next == y) break;
    y = std::move(next);
  }
  SystemSolution sol;
  sol.total = evaluate(sys.total, with_z(y));
  sol.unknowns = std::move(y);
  return sol;
}

std::string EquationSystem::format() const {
  auto all = variable_names(*this);
  std::string out;
  for (int i = 0; i < size(); ++i) {
    const auto& name = names[static_cast<std::size_t>(i)];
    if (kind == Kind::polynomial) {
      const auto& f = rhs[static_cast<std::size_t>(i)];
      Integer den = 1, num = 0;
      for (const auto& [e, c] : f.terms()) den = lcm(den, c.get_den());
      for (const auto& [e, c] : f.terms()) num = gcd(num, Integer(c.get_num() * (den / c.get_den())));
      num = gcd(num, den);
      const Rational scale(den / num);
      Polynomial g = scale * f;
      out += (scale == 1 ? name : format_rational(scale) + "*" + name) + " = " + format_polynomial(g, all) + "\n";
    } else {
      std::string line;
      auto add = [&](const Rational& c, const std::string& text) {
        if (c == 0) return;
        if (!line.empty()) line += c < 0 ? " - " : " + ";
        else if (c < 0) line += "-";
        Rational a = abs(c);
        line += a == 1 ? text : format_rational(a) + "*" + text;
      };
      add(z_coef[static_cast<std::size_t>(i)], "z");
      for (const auto& t : c_terms[static_cast<std::size_t>(i)]) {
        std::string rest;
        for (std::size_t a = 1; a < t.args.size(); ++a) {
          if (!rest.empty()) rest += "*";
          rest += names[static_cast<std::size_t>(t.args[a])];
        }
        add(t.coef, "C(" + names[static_cast<std::size_t>(t.args[0])] + ", " + (rest.empty() ? "1" : rest) + ")");
      }
      out += name + " = " + (line.empty() ? "0" : line) + "\n";
    }
  }
  return out;
}

std::string EquationSystem::format_total() const {
  return format_polynomial(total, variable_names(*this));
}

std::string AlgebraicEquation::format() const { return q.format({"z", "Y"}) + " = 0"; }

AlgebraicEquation eliminate(const EquationSystem& sys, int max_unknowns) {
  if (sys.kind != EquationSystem::Kind::polynomial) throw Error("eliminate needs a polynomial system");
  const int n = sys.size();
  if (n > max_unknowns) {
    throw Error("eliminate: " + std::to_string(n) + " unknowns exceed the cap of " +
                std::to_string(max_unknowns));
  }
  // Variables (z, y_0..y_{n-1}, Y).
  const int nv = n + 2;
  const int yv = n + 1;
  std::vector<int> lift(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) lift[static_cast<std::size_t>(i)] = i;
  std::vector<Polynomial> eqs;
  int bound = 1;
  for (int i = 0; i < n; ++i) {
    const auto& f = sys.rhs[static_cast<std::size_t>(i)];
    eqs.push_back(var(nv, i + 1) - remap(f, nv, lift));
    const int d = std::max(1, f.total_degree());
    bound *= d * d;
  }
  eqs.push_back(var(nv, yv) - remap(sys.total, nv, lift));

  for (int v = 1; v <= n; ++v) {
    std::vector<std::size_t> with;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      if (eqs[e].depends_on(v)) with.push_back(e);
    }
    if (with.empty()) continue;
    // A linear occurrence with a constant coefficient is substituted directly.
    std::optional<std::size_t> linear;
    for (auto e : with) {
      if (eqs[e].degree(v) != 1) continue;
      auto c = eqs[e].coefficient(v, 1);
      if (c.total_degree() == 0) {
        linear = e;
        break;
      }
    }
    if (linear) {
      const auto& e = eqs[*linear];
      Rational c = e.coefficient(v, 1).terms().begin()->second;
      Polynomial value = Rational(-1) / c * e.coefficient(v, 0);
      eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(*linear));
      for (auto& f : eqs) f = f.substitute(v, value);
      continue;
    }
    std::size_t pivot = with[0];
    for (auto e : with) {
      if (eqs[e].degree(v) < eqs[pivot].degree(v)) pivot = e;
    }
    std::vector<Polynomial> next;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      if (e == pivot) continue;
      if (!eqs[e].depends_on(v)) {
        next.push_back(eqs[e]);
        continue;
      }
      auto r = resultant(eqs[pivot], eqs[e], v);
      if (r.is_zero()) throw Error("eliminate: equations share a common factor");
      next.push_back(r.primitive());
    }
    eqs = std::move(next);
  }
  std::optional<Polynomial> eliminant;
  for (const auto& e : eqs) {
    if (e.depends_on(yv)) {
      eliminant = e;
      break;
    }
  }
  if (!eliminant) throw Error("eliminate: no equation involving the total series remains");
  std::vector<int> project(static_cast<std::size_t>(nv), -1);
  project[0] = 0;
  project[static_cast<std::size_t>(yv)] = 1;
  const Polynomial r = remap(*eliminant, 2, project);

  const int dy = r.degree(1), dz = std::max(r.degree(0), 0);
  const int kmax = (dz + 1) * (dy + 1) + dz + dy + 4;
  const PowerSeries y = solve_series(sys, kmax).total;
  std::vector<PowerSeries> ypow{PowerSeries::constant(sys.flavor, kmax, 1)};
  for (int b = 1; b <= dy; ++b) ypow.push_back(ypow.back() * y);

  for (int d = 1; d <= dy; ++d) {
    for (int e = 0; e <= dz; ++e) {
      const int k = (e + 1) * (d + 1) + e + d + 4;
      std::vector<std::vector<Rational>> rows;
      for (int m = 0; m <= k; ++m) {
        std::vector<Rational> row;
        for (int b = 0; b <= d; ++b) {
          for (int a = 0; a <= e; ++a) row.push_back(m - a >= 0 ? ypow[static_cast<std::size_t>(b)][m - a] : Rational(0));
        }
        rows.push_back(std::move(row));
      }
      auto ns = null_space(std::move(rows), (e + 1) * (d + 1));
      if (ns.empty()) continue;
      Polynomial q(2);
      std::size_t idx = 0;
      for (int b = 0; b <= d; ++b) {
        for (int a = 0; a <= e; ++a) q.add_term({a, b}, ns[0][idx++]);
      }
      q = q.primitive();
      if (!q.depends_on(1) || !pseudo_remainder(r, q, 1).is_zero()) continue;
      if (!verify_algebraic(q, y.truncate(k))) continue;
      AlgebraicEquation out;
      out.q = q;
      out.degree_bound = bound;
      out.verified_order = k;
      out.spare = k - std::max(q.degree(0), 0) - q.degree(1);
      return out;
    }
  }
  throw Error("eliminate: no factor of the eliminant annihilates the total series");
}

std::vector<DiffPolynomial> ode_from_system(const EquationSystem& sys) {
  if (sys.kind != EquationSystem::Kind::c_operation) throw Error("ode_from_system needs a C-operation system");
  const int n = sys.size();
  const int nv = 1 + 2 * n;
  std::vector<std::pair<int, int>> vars;
  for (int j = 0; j < n; ++j) vars.emplace_back(j, 0);
  for (int j = 0; j < n; ++j) vars.emplace_back(j, 1);
  auto y = [&](int j) { return var(nv, 1 + j); };
  auto dy = [&](int j) { return var(nv, 1 + n + j); };
  std::vector<DiffPolynomial> out;
  for (int i = 0; i < n; ++i) {
    Polynomial p = dy(i) - Polynomial::constant(nv, sys.z_coef[static_cast<std::size_t>(i)]);
    for (const auto& t : sys.c_terms[static_cast<std::size_t>(i)]) {
      Polynomial term = t.coef * dy(t.args[0]);
      for (std::size_t a = 1; a < t.args.size(); ++a) term = term * y(t.args[a]);
      p -= term;
    }
    out.push_back(DiffPolynomial{std::move(p), vars});
  }
  return out;
}

}  // namespace operad
