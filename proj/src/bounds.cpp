#include "operad/bounds.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

namespace operad {

Integer factorial_quotient(int n) {
  return factorial(static_cast<unsigned>(2 * n)) / factorial(static_cast<unsigned>(n));
}

GSInput gs_input(const Presentation& p, int order) {
  const Flavor flavor = p.mode == Mode::shuffle ? Flavor::egf : Flavor::ogf;
  GSInput in{PowerSeries(flavor, order), PowerSeries(flavor, order)};
  auto unit = [&](int k) {
    return flavor == Flavor::egf ? Rational(1) / Rational(factorial(static_cast<unsigned>(k))) : Rational(1);
  };
  for (const auto& g : p.signature.generators()) {
    if (g.arity <= order) in.x.set(g.arity, in.x[g.arity] + unit(g.arity));
  }
  for (const auto& r : p.relations) {
    if (r.is_zero()) continue;
    const int k = r.arity();
    if (k <= order) in.r.set(k, in.r[k] + unit(k));
  }
  return in;
}

Rational GSBound::dim(int n) const {
  if (series.flavor() == Flavor::egf) return series[n] * Rational(factorial(static_cast<unsigned>(n)));
  return series[n];
}

GSBound gs_lower_bound(const GSInput& in, int order) {
  const Flavor flavor = in.x.flavor();
  const PowerSeries t = PowerSeries::z(flavor, order);
  const PowerSeries f = t - in.x.truncate(order) + in.r.truncate(order);
  if (f[0] != 0 || (order >= 1 && f[1] != 1)) {
    throw HypothesisError("t - X(t) + R(t) must have f(0) = 0 and f'(0) = 1");
  }
  GSBound out;
  out.series = lagrange_inverse(f, order);
  // t/f(t) = 1/(f(t)/t).
  std::vector<Rational> shifted(f.coeffs().begin() + 1, f.coeffs().end());
  const PowerSeries t_over_f = reciprocal(PowerSeries(flavor, shifted));
  out.hypothesis = true;
  for (const auto& c : t_over_f.coeffs()) {
    if (c < 0) out.hypothesis = false;
  }
  // Lagrange: [z^n] f^[-1] = (1/n) [t^(n-1)] (t/f)^n.
  PowerSeries pow = PowerSeries::constant(flavor, t_over_f.order(), 1);
  for (int n = 1; n <= order; ++n) {
    pow = pow * t_over_f;
    if (out.series[n] != pow[n - 1] / n) throw Error("GS bound: Lagrange cross-check failed");
  }
  out.nonnegative = true;
  for (const auto& c : out.series.coeffs()) {
    if (c < 0) out.nonnegative = false;
  }
  return out;
}

namespace {

Rational eval(const std::vector<Rational>& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign(const Rational& x) { return sgn(x); }

Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// Smallest positive root of p with p(0) > 0, bracketed to width 1e-12.
// Roots of even multiplicity are found only for quadratics.
std::optional<std::pair<Rational, Rational>> smallest_positive_root(std::vector<Rational> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) return std::nullopt;
  if (deg == 2) {
    const Rational disc = p[1] * p[1] - 4 * p[2] * p[0];
    if (disc < 0) return std::nullopt;
    if (disc == 0) {
      Rational r = -p[1] / (2 * p[2]);
      if (r > 0) return std::make_pair(r, r);
      return std::nullopt;
    }
  }
  Rational bound = 0;
  for (int i = 0; i < deg; ++i) bound = std::max(bound, Rational(abs(p[static_cast<std::size_t>(i)] / p.back())));
  bound += 1;
  const Rational step = bound / 4096;
  Rational lo = 0;
  int s_lo = sign(eval(p, lo));
  std::optional<Rational> hi;
  for (int k = 1; k <= 4096; ++k) {
    Rational x = step * k;
    int s = sign(eval(p, x));
    if (s == 0) return std::make_pair(x, x);
    if (s != s_lo) {
      hi = x;
      break;
    }
    lo = x;
  }
  if (!hi) return std::nullopt;
  Rational h = *hi;
  const Rational width = Rational(1) / Rational("1000000000000");
  while (h - lo > width) {
    Rational mid = (lo + h) / 2;
    int s = sign(eval(p, mid));
    if (s == 0) return std::make_pair(mid, mid);
    if (s == s_lo) {
      lo = mid;
    } else {
      h = mid;
    }
  }
  return std::make_pair(lo, h);
}

// Largest square dividing v (trial division, v small in practice).
Integer square_part(Integer& v) {
  Integer out = 1;
  for (Integer f = 2; f * f <= v; ++f) {
    while (v % (f * f) == 0) {
      v /= f * f;
      out *= f;
    }
  }
  return out;
}

// The root of a z^2 + b z + c0 inside [lo, hi] as "A +- B*sqrt(k)".
std::string quadratic_radical(const std::vector<Rational>& p, const Rational& lo, const Rational& hi) {
  const Rational& a = p[2];
  const Rational& b = p[1];
  const Rational disc = b * b - 4 * a * p[0];
  // sqrt(n/d) = sqrt(n*d)/d.
  Integer k = disc.get_num() * disc.get_den();
  const Integer sq = square_part(k);
  const Rational A = -b / (2 * a);
  Rational B = Rational(sq) / Rational(disc.get_den()) / (2 * a);
  if (k == 1) return {};
  const double root_k = std::sqrt(k.get_d());
  const double mid = Rational((lo + hi) / 2).get_d();
  const bool minus = std::abs(A.get_d() - B.get_d() * root_k - mid) < std::abs(A.get_d() + B.get_d() * root_k - mid);
  if (minus) B = -B;
  std::string out = A == 0 ? "" : format_rational(A) + (B < 0 ? " - " : " + ");
  if (A == 0 && B < 0) out = "-";
  const Rational absb = abs(B);
  if (absb != 1) out += format_rational(absb) + "*";
  return out + "sqrt(" + k.get_str() + ")";
}

}  // namespace

BinaryBounds binary_bounds(int c, const PowerSeries& r, int n_max) {
  if (c <= 0) throw HypothesisError("binary_bounds needs at least one binary generator");
  BinaryBounds out;
  out.c = c;
  // phi(z) = 1 - c z / 2 + R(z) / z.
  std::vector<Rational> phi(static_cast<std::size_t>(std::max(r.order(), 2)), Rational(0));
  phi[0] = 1;
  phi[1] = -Rational(c) / 2;
  for (int k = 2; k <= r.order(); ++k) phi[static_cast<std::size_t>(k - 1)] += r[k];
  if (r[0] != 0 || (r.order() >= 1 && r[1] != 0)) throw HypothesisError("relations of arity below 2");

  bool only_cubic = true;
  for (int k = 0; k <= r.order(); ++k) {
    if (k != 3 && r[k] != 0) only_cubic = false;
  }
  out.quadratic = only_cubic && r.order() >= 3 && r[3] != 0;
  if (out.quadratic) {
    out.d = r[3] * 6;
    out.condition = out.d <= Rational(3 * c * c) / 8;
    if (!out.condition) return out;
  }
  auto root = smallest_positive_root(phi);
  if (!root) return out;
  out.root_found = true;
  out.z0_lo = root->first;
  out.z0_hi = root->second;
  out.z0 = Rational((out.z0_lo + out.z0_hi) / 2).get_d();
  if (out.quadratic && out.z0_lo != out.z0_hi) out.z0_radical = quadratic_radical(phi, out.z0_lo, out.z0_hi);

  PowerSeries x(Flavor::egf, n_max);
  if (n_max >= 2) x.set(2, Rational(c) / 2);
  PowerSeries rr(Flavor::egf, n_max);
  for (int k = 0; k <= std::min(n_max, r.order()); ++k) rr.set(k, r[k]);
  const auto gs = gs_lower_bound({x, rr}, n_max);
  for (int n = 1; n + 1 <= n_max; ++n) {
    BinaryRow row;
    row.n = n;
    const Integer q = factorial_quotient(n);
    Rational zn = 1;
    for (int i = 0; i < n; ++i) zn *= out.z0_hi;
    row.lower = ceil_of(Rational(q) / zn);
    row.lower_printed = q.get_d() * static_cast<double>(n) * std::pow(out.z0, -n);
    Rational half(c, 2);
    Rational up = q;
    for (int i = 0; i < n; ++i) up *= half;
    row.upper = ceil_of(up);
    row.gs = gs.dim(n + 1);
    row.sandwich = Rational(row.lower) <= row.gs && row.gs <= Rational(row.upper);
    out.rows.push_back(row);
  }
  return out;
}

DimTable partial_gb_bound(const Presentation& p, const MonomialOrder& order,
                          const GroebnerOptions& options, int n_max) {
  return dims_of_quotient(p, order, options, n_max);
}

namespace {

std::vector<std::complex<double>> polynomial_roots(const std::vector<Rational>& coeffs) {
  std::vector<std::complex<double>> a;
  for (const auto& c : coeffs) a.emplace_back(c.get_d(), 0.0);
  while (!a.empty() && std::abs(a.back()) == 0.0) a.pop_back();
  const int deg = static_cast<int>(a.size()) - 1;
  if (deg < 1) return {};
  const auto lead = a.back();
  for (auto& x : a) x /= lead;
  // Durand-Kerner iteration.
  std::vector<std::complex<double>> z(static_cast<std::size_t>(deg));
  const std::complex<double> seed(0.4, 0.9);
  for (int i = 0; i < deg; ++i) z[static_cast<std::size_t>(i)] = std::pow(seed, i);
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i < deg; ++i) {
      std::complex<double> num = 0;
      for (int k = deg; k >= 0; --k) num = num * z[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(k)];
      std::complex<double> den = 1;
      for (int j = 0; j < deg; ++j) {
        if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      }
      z[static_cast<std::size_t>(i)] -= num / den;
    }
  }
  return z;
}

// Rational roots by the rational root theorem (small coefficients only).
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
  Integer l = 1;
  for (const auto& c : coeffs) l = lcm(l, c.get_den());
  std::vector<Integer> a;
  for (const auto& c : coeffs) a.push_back(Integer(c * Rational(l)));
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  std::vector<Rational> out;
  if (a.size() < 2 || a[0] == 0) return out;
  const Integer a0 = abs(a[0]), ad = abs(a.back());
  if (a0 > 100000 || ad > 100000) return out;
  auto divisors = [](long v) {
    std::vector<long> d;
    for (long i = 1; i <= v; ++i) {
      if (v % i == 0) d.push_back(i);
    }
    return d;
  };
  std::vector<Rational> coeff_q(coeffs.begin(), coeffs.end());
  for (long p : divisors(a0.get_si())) {
    for (long q : divisors(ad.get_si())) {
      for (int s : {1, -1}) {
        Rational x(s * p, q);
        x.canonicalize();
        if (eval(coeff_q, x) == 0 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
      }
    }
  }
  return out;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

GrowthReport growth_report(const std::vector<Integer>& dims, Flavor flavor) {
  if (dims.size() < 5) throw Error("growth_report needs dimensions for at least 4 arities");
  GrowthReport rep;
  const int top = static_cast<int>(dims.size()) - 1;
  for (int n = 1; n <= top; ++n) {
    const auto& d = dims[static_cast<std::size_t>(n)];
    if (d <= 0) continue;
    const double ld = std::log(d.get_d());
    rep.rows.push_back({n, std::exp(ld / n), std::exp((ld - std::lgamma(n + 1.0)) / n)});
  }
  PowerSeries s(flavor, top);
  for (int n = 0; n <= top; ++n) {
    Rational c(dims[static_cast<std::size_t>(n)]);
    if (flavor == Flavor::egf) c /= Rational(factorial(static_cast<unsigned>(n)));
    s.set(n, c);
  }
  rep.rational = guess_rational(s);
  if (rep.rational) {
    const auto& den = rep.rational->den;
    if (den.size() <= 1) {
      rep.exact_exponent = Rational(0);
    } else {
      auto roots = polynomial_roots(den);
      double rho = INFINITY;
      for (const auto& z : roots) rho = std::min(rho, std::abs(z));
      rep.pole_estimate = 1.0 / rho;
      for (const auto& q : rational_roots(den)) {
        if (std::abs(std::abs(q.get_d()) - rho) < 1e-9 * std::max(1.0, rho)) {
          rep.exact_exponent = 1 / abs(q);
          break;
        }
      }
    }
  }
  return rep;
}

std::string GrowthReport::text() const {
  std::string out = "arity\tdim^(1/n)\t(dim/n!)^(1/n)\n";
  for (const auto& r : rows) {
    out += std::to_string(r.arity) + "\t" + fixed(r.root) + "\t" + fixed(r.factorial_root) + "\testimate\n";
  }
  if (rational) out += "rational generating function: " + rational->format() + "\n";
  if (exact_exponent) {
    out += "exponent: " + format_rational(*exact_exponent) + " (exact, reciprocal of the dominant pole)\n";
  } else if (pole_estimate) {
    out += "exponent: " + fixed(*pole_estimate) + " estimate (reciprocal of the smallest pole modulus)\n";
  } else {
    out += "exponent: not determined; the root sequences above are estimates only\n";
  }
  return out;
}

}  // namespace operad
