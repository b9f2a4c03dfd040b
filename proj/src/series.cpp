#include "operad/series.hpp"

#include <algorithm>

namespace operad {

std::string_view to_string(Flavor f) { return f == Flavor::ogf ? "ogf" : "egf"; }

PowerSeries::PowerSeries(Flavor flavor, int order)
    : flavor_(flavor), c_(static_cast<std::size_t>(std::max(order, 0)) + 1, Rational(0)) {
  if (order < 0) throw Error("series order must be nonnegative");
}

PowerSeries::PowerSeries(Flavor flavor, std::vector<Rational> coeffs)
    : flavor_(flavor), c_(std::move(coeffs)) {
  if (c_.empty()) throw Error("series needs at least one coefficient");
}

PowerSeries PowerSeries::z(Flavor flavor, int order) {
  PowerSeries s(flavor, order);
  if (order >= 1) s.c_[1] = 1;
  return s;
}

PowerSeries PowerSeries::constant(Flavor flavor, int order, const Rational& c) {
  PowerSeries s(flavor, order);
  s.c_[0] = c;
  return s;
}

const Rational& PowerSeries::operator[](int n) const {
  if (n < 0 || n > order()) {
    throw Error("coefficient " + std::to_string(n) + " is beyond the truncation order " +
                std::to_string(order()));
  }
  return c_[static_cast<std::size_t>(n)];
}

void PowerSeries::set(int n, const Rational& v) {
  if (n < 0 || n > order()) throw Error("coefficient index beyond the truncation order");
  c_[static_cast<std::size_t>(n)] = v;
}

int PowerSeries::valuation() const {
  for (int n = 0; n <= order(); ++n) {
    if (c_[static_cast<std::size_t>(n)] != 0) return n;
  }
  return order() + 1;
}

PowerSeries PowerSeries::truncate(int order) const {
  if (order > this->order()) throw InsufficientOrder("cannot extend a series beyond its order");
  return PowerSeries(flavor_, std::vector<Rational>(c_.begin(), c_.begin() + order + 1));
}

PowerSeries PowerSeries::with_flavor(Flavor f) const {
  PowerSeries s = *this;
  s.flavor_ = f;
  return s;
}

namespace {

void same_flavor(const PowerSeries& a, const PowerSeries& b) {
  if (a.flavor() != b.flavor()) throw Error("series of different flavours");
}

}  // namespace

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  same_flavor(*this, o);
  if (o.order() < order()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  same_flavor(*this, o);
  if (o.order() < order()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

PowerSeries& PowerSeries::operator*=(const Rational& c) {
  for (auto& x : c_) x *= c;
  return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  same_flavor(a, b);
  const int n = std::min(a.order(), b.order());
  PowerSeries out(a.flavor(), n);
  for (int i = 0; i <= n; ++i) {
    if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      out.c_[static_cast<std::size_t>(i + j)] +=
          a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

PowerSeries derive(const PowerSeries& f) {
  if (f.order() == 0) throw InsufficientOrder("derivative of an order-0 series");
  std::vector<Rational> c(static_cast<std::size_t>(f.order()));
  for (int n = 1; n <= f.order(); ++n) c[static_cast<std::size_t>(n - 1)] = f[n] * n;
  return PowerSeries(f.flavor(), std::move(c));
}

PowerSeries integrate(const PowerSeries& f) {
  std::vector<Rational> c(static_cast<std::size_t>(f.order()) + 2);
  for (int n = 0; n <= f.order(); ++n) c[static_cast<std::size_t>(n + 1)] = f[n] / (n + 1);
  return PowerSeries(f.flavor(), std::move(c));
}

PowerSeries compose(const PowerSeries& f, const PowerSeries& g) {
  same_flavor(f, g);
  if (g[0] != 0) throw HypothesisError("compose: inner series must vanish at 0");
  const int n = std::min(f.order(), g.order());
  PowerSeries gn = g.truncate(n);
  PowerSeries out = PowerSeries::constant(f.flavor(), n, f[n]);
  for (int k = n - 1; k >= 0; --k) {
    out = out * gn;
    out.set(0, out[0] + f[k]);
  }
  return out;
}

PowerSeries reciprocal(const PowerSeries& f) {
  if (f[0] == 0) throw HypothesisError("reciprocal: constant term is zero");
  PowerSeries out(f.flavor(), f.order());
  const Rational inv = 1 / f[0];
  out.set(0, inv);
  for (int n = 1; n <= f.order(); ++n) {
    Rational acc = 0;
    for (int k = 1; k <= n; ++k) acc += f[k] * out[n - k];
    out.set(n, -acc * inv);
  }
  return out;
}

PowerSeries power(const PowerSeries& f, unsigned k) {
  PowerSeries out = PowerSeries::constant(f.flavor(), f.order(), 1);
  for (unsigned i = 0; i < k; ++i) out = out * f;
  return out;
}

PowerSeries c_operation(const PowerSeries& f, const PowerSeries& g) {
  return integrate(derive(f) * g);
}

PowerSeries lagrange_inverse(const PowerSeries& f, int n) {
  if (f.order() < n) {
    throw InsufficientOrder("lagrange_inverse: series known to order " +
                            std::to_string(f.order()) + " < " + std::to_string(n));
  }
  if (f[0] != 0) throw HypothesisError("lagrange_inverse: f(0) must be 0");
  if (n >= 1 && f[1] == 0) throw HypothesisError("lagrange_inverse: f'(0) = 0");
  PowerSeries fn = f.truncate(n);
  const PowerSeries z = PowerSeries::z(f.flavor(), n);
  if (n == 0) return PowerSeries(f.flavor(), 0);
  const Rational inv = 1 / f[1];
  PowerSeries y = inv * z;
  // Each step fixes at least one more coefficient.
  for (int it = 1; it < n; ++it) {
    PowerSeries err = z - compose(fn, y);
    if (err.valuation() > n) break;
    y += inv * err;
  }
  if (compose(fn, y) != z) throw Error("lagrange_inverse: iteration did not converge");
  return y;
}

PowerSeries flavor_convert(const PowerSeries& s, Flavor target) {
  if (s.flavor() == target) return s;
  PowerSeries out = s.with_flavor(target);
  for (int n = 0; n <= s.order(); ++n) {
    Rational f(factorial(static_cast<unsigned>(n)));
    out.set(n, target == Flavor::ogf ? Rational(s[n] * f) : Rational(s[n] / f));
  }
  return out;
}

std::vector<Integer> symmetrize_dims(std::span<const Integer> nonsymmetric) {
  std::vector<Integer> out;
  for (std::size_t n = 0; n < nonsymmetric.size(); ++n) {
    out.push_back(nonsymmetric[n] * factorial(static_cast<unsigned>(n)));
  }
  return out;
}

std::vector<Integer> dims_of(const PowerSeries& s) {
  PowerSeries o = flavor_convert(s, Flavor::ogf);
  std::vector<Integer> out;
  for (int n = 0; n <= o.order(); ++n) {
    if (o[n].get_den() != 1) {
      throw Error("coefficient " + std::to_string(n) + " is not an integer dimension");
    }
    out.push_back(o[n].get_num());
  }
  return out;
}

std::string format_series(const PowerSeries& s) {
  std::string out = std::string(to_string(s.flavor())) + " " + std::to_string(s.order()) + ";";
  for (const auto& c : s.coeffs()) out += " " + format_rational(c);
  return out;
}

PowerSeries evaluate(const Polynomial& p, std::span<const PowerSeries> series) {
  if (static_cast<int>(series.size()) != p.nvars()) {
    throw Error("evaluate: wrong number of series");
  }
  if (series.empty()) throw Error("evaluate: no series given");
  int order = series[0].order();
  for (std::size_t v = 0; v < series.size(); ++v) {
    if (p.depends_on(static_cast<int>(v))) order = std::min(order, series[v].order());
  }
  const Flavor flavor = series[0].flavor();
  std::vector<std::vector<PowerSeries>> powers(series.size());
  auto power_of = [&](std::size_t v, int k) -> const PowerSeries& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(PowerSeries::constant(flavor, order, 1));
    while (static_cast<int>(list.size()) <= k) list.push_back(list.back() * series[v].truncate(order));
    return list[static_cast<std::size_t>(k)];
  };
  PowerSeries out(flavor, order);
  for (const auto& [e, c] : p.terms()) {
    PowerSeries t = PowerSeries::constant(flavor, order, c);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] > 0) t = t * power_of(v, e[v]);
    }
    out += t;
  }
  return out;
}

bool verify_algebraic(const Polynomial& q, const PowerSeries& s) {
  if (q.nvars() != 2) throw Error("verify_algebraic: expected a polynomial in (z, y)");
  if (q.is_zero()) throw Error("verify_algebraic: zero polynomial");
  const int need = std::max(q.degree(0), 0) + std::max(q.degree(1), 0) + 4;
  if (s.order() < need) {
    throw InsufficientOrder("verify_algebraic needs order >= " + std::to_string(need) + ", got " +
                            std::to_string(s.order()));
  }
  const PowerSeries zs[] = {PowerSeries::z(s.flavor(), s.order()), s};
  return evaluate(q, zs).valuation() > s.order();
}

DiffPolynomial DiffPolynomial::single(Polynomial p, int max_derivative) {
  DiffPolynomial d{std::move(p), {}};
  for (int k = 0; k <= max_derivative; ++k) d.vars.emplace_back(0, k);
  if (d.poly.nvars() != static_cast<int>(d.vars.size()) + 1) {
    throw Error("differential polynomial has the wrong number of variables");
  }
  return d;
}

int DiffPolynomial::max_derivative() const {
  int m = 0;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (poly.depends_on(static_cast<int>(k) + 1)) m = std::max(m, vars[k].second);
  }
  return m;
}

std::string DiffPolynomial::format(const std::vector<std::string>& unknown_names) const {
  std::vector<std::string> names{"z"};
  for (const auto& [u, k] : vars) {
    std::string n = unknown_names.at(static_cast<std::size_t>(u));
    n += k <= 3 ? std::string(static_cast<std::size_t>(k), '\'') : "^(" + std::to_string(k) + ")";
    names.push_back(n);
  }
  return poly.format(names);
}

bool verify_ode(const DiffPolynomial& d, std::span<const PowerSeries> unknowns) {
  if (d.poly.nvars() != static_cast<int>(d.vars.size()) + 1) {
    throw Error("differential polynomial has the wrong number of variables");
  }
  if (unknowns.empty()) throw Error("verify_ode: no series given");
  std::vector<PowerSeries> subs;
  int order = unknowns[0].order();
  for (std::size_t k = 0; k < d.vars.size(); ++k) {
    const auto& [u, j] = d.vars[k];
    PowerSeries s = unknowns[static_cast<std::size_t>(u)];
    for (int i = 0; i < j; ++i) s = derive(s);
    if (d.poly.depends_on(static_cast<int>(k) + 1)) order = std::min(order, s.order());
    subs.push_back(std::move(s));
  }
  const int need = std::max(d.poly.degree(0), 0) + 4;
  if (order < need) {
    throw InsufficientOrder("verify_ode needs " + std::to_string(need) +
                            " determined coefficients, got " + std::to_string(order));
  }
  std::vector<PowerSeries> all{PowerSeries::z(unknowns[0].flavor(), order)};
  for (auto& s : subs) all.push_back(s.order() >= order ? s.truncate(order) : s);
  return evaluate(d.poly, all).truncate(order).valuation() > order;
}

bool verify_ode(const DiffPolynomial& d, const PowerSeries& s) {
  return verify_ode(d, std::span<const PowerSeries>(&s, 1));
}

PowerSeries RationalFunction::expand(Flavor flavor, int order) const {
  PowerSeries p(flavor, order), q(flavor, order);
  for (std::size_t i = 0; i < num.size() && static_cast<int>(i) <= order; ++i) {
    p.set(static_cast<int>(i), num[i]);
  }
  for (std::size_t i = 0; i < den.size() && static_cast<int>(i) <= order; ++i) {
    q.set(static_cast<int>(i), den[i]);
  }
  return p * reciprocal(q);
}

std::string RationalFunction::format() const {
  auto poly = [](const std::vector<Rational>& c) {
    Polynomial p(1);
    for (std::size_t i = 0; i < c.size(); ++i) p.add_term({static_cast<int>(i)}, c[i]);
    return p.format({"z"});
  };
  return "(" + poly(num) + ")/(" + poly(den) + ")";
}

namespace {

// Row-reduces a in place; returns the pivot column of each pivot row.
std::vector<int> rref(std::vector<std::vector<Rational>>& a, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][static_cast<std::size_t>(col)] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    const Rational inv = 1 / a[row][static_cast<std::size_t>(col)];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][static_cast<std::size_t>(col)] == 0) continue;
      const Rational f = a[r][static_cast<std::size_t>(col)];
      for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Any solution of a x = b (free variables zero), or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_any(std::vector<std::vector<Rational>> a,
                                               const std::vector<Rational>& b, int cols) {
  for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
  auto pivots = rref(a, cols);
  for (std::size_t r = pivots.size(); r < a.size(); ++r) {
    if (a[r][static_cast<std::size_t>(cols)] != 0) return std::nullopt;
  }
  std::vector<Rational> x(static_cast<std::size_t>(cols), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    x[static_cast<std::size_t>(pivots[r])] = a[r][static_cast<std::size_t>(cols)];
  }
  return x;
}

}  // namespace

std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const int n = static_cast<int>(a.size());
  for (auto& row : a) {
    if (static_cast<int>(row.size()) != n) throw Error("solve_linear: matrix is not square");
  }
  for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r)].push_back(b[static_cast<std::size_t>(r)]);
  auto pivots = rref(a, n);
  if (static_cast<int>(pivots.size()) < n) return std::nullopt;
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) x[static_cast<std::size_t>(r)] = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)];
  return x;
}

std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> a, int cols) {
  auto pivots = rref(a, cols);
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(cols), Rational(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[static_cast<std::size_t>(pivots[r])] = -a[r][static_cast<std::size_t>(f)];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalFunction> guess_rational(const PowerSeries& s, int max_den_degree) {
  const int n = s.order();
  auto coef = [&](int k) { return k < 0 ? Rational(0) : s[k]; };
  for (int d = 0; d <= max_den_degree; ++d) {
    for (int p = 0; p <= d + 1; ++p) {
      const int spare = n - p - d;
      if (spare < 4) continue;
      // Q = 1 + q_1 z + ... + q_d z^d with [z^k] Q*S = 0 for k = p+1..p+d.
      std::vector<Rational> q{Rational(1)};
      if (d > 0) {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (int k = p + 1; k <= p + d; ++k) {
          std::vector<Rational> row;
          for (int j = 1; j <= d; ++j) row.push_back(coef(k - j));
          a.push_back(std::move(row));
          b.push_back(-coef(k));
        }
        auto x = solve_any(a, b, d);
        if (!x) continue;
        q.insert(q.end(), x->begin(), x->end());
      }
      RationalFunction r;
      r.den = q;
      for (int i = 0; i <= p; ++i) {
        Rational acc = 0;
        for (int j = 0; j <= std::min(i, d); ++j) acc += q[static_cast<std::size_t>(j)] * coef(i - j);
        r.num.push_back(acc);
      }
      while (r.num.size() > 1 && r.num.back() == 0) r.num.pop_back();
      while (r.den.size() > 1 && r.den.back() == 0) r.den.pop_back();
      if (r.expand(s.flavor(), n) != s) continue;
      r.spare = spare;
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace operad
