#include "operad/polynomial.hpp"

#include <algorithm>

namespace operad {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int var, int power) {
  if (var < 0 || var >= nvars) throw Error("polynomial variable out of range");
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(var)] = power;
  Polynomial p(nvars);
  p.add_term(e, 1);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw Error("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw Error("polynomials over different variable sets");
}

int Polynomial::degree(int var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
  return d;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

Polynomial Polynomial::coefficient(int var, int k) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<std::size_t>(var)] != k) continue;
    Exponents f = e;
    f[static_cast<std::size_t>(var)] = 0;
    out.add_term(f, c);
  }
  return out;
}

Polynomial Polynomial::substitute(int var, const Polynomial& value) const {
  check(value);
  const int d = degree(var);
  if (d <= 0) return *this;
  std::vector<Polynomial> powers{constant(nvars_, 1)};
  for (int k = 1; k <= d; ++k) powers.push_back(powers.back() * value);
  Polynomial out(nvars_);
  for (int k = 0; k <= d; ++k) {
    Polynomial ck = coefficient(var, k);
    if (!ck.is_zero()) out += ck * powers[static_cast<std::size_t>(k)];
  }
  return out;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Exponents f = e;
    --f[static_cast<std::size_t>(var)];
    out.add_term(f, c * k);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial out = constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

namespace {

// Display order: compare exponent vectors from the last variable backwards.
bool display_greater(const Polynomial::Exponents& a, const Polynomial::Exponents& b) {
  return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
}

}  // namespace

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  Integer den = 1, num = 0;
  for (const auto& [e, c] : terms_) {
    den = lcm(den, c.get_den());
    num = gcd(num, c.get_num());
  }
  const Polynomial::Exponents* lead = nullptr;
  for (const auto& [e, c] : terms_) {
    if (!lead || display_greater(e, *lead)) lead = &e;
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (terms_.at(*lead) < 0) scale = -scale;
  Polynomial out = *this;
  out *= scale;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check(b);
  Polynomial out(a.nvars_);
  Polynomial::Exponents e(static_cast<std::size_t>(a.nvars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string Polynomial::format(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) != nvars_) throw Error("wrong number of variable names");
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, Rational>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(),
            [](const auto& x, const auto& y) { return display_greater(x.first, y.first); });
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& [e, c] = ts[i];
    Rational a = abs(c);
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int v = nvars_ - 1; v >= 0; --v) {
      int k = e[static_cast<std::size_t>(v)];
      if (k == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[static_cast<std::size_t>(v)];
      if (k > 1) mono += "^" + std::to_string(k);
    }
    if (mono.empty()) {
      out += format_rational(a);
    } else if (a == 1) {
      out += mono;
    } else {
      out += format_rational(a) + "*" + mono;
    }
  }
  return out;
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, int var) {
  if (p.nvars() != q.nvars()) throw Error("resultant: variable sets differ");
  const int nv = p.nvars();
  if (p.is_zero() || q.is_zero()) return Polynomial(nv);
  const int m = p.degree(var), n = q.degree(var);
  if (m == 0) return p.pow(static_cast<unsigned>(n));
  if (n == 0) return q.pow(static_cast<unsigned>(m));
  const int size = m + n;
  if (size > 20) throw Error("resultant: Sylvester matrix too large");
  // Row r < n holds p shifted by r; row n + r holds q shifted by r.
  std::vector<std::vector<Polynomial>> mat(static_cast<std::size_t>(size),
                                           std::vector<Polynomial>(static_cast<std::size_t>(size), Polynomial(nv)));
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) {
      mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + m - k)] = p.coefficient(var, k);
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) {
      mat[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + n - k)] = q.coefficient(var, k);
    }
  }
  // Division-free determinant: dp over the set of columns used by the
  // first popcount(mask) rows.
  const std::size_t full = std::size_t{1} << size;
  std::vector<Polynomial> dp(full, Polynomial(nv));
  std::vector<char> live(full, 0);
  dp[0] = Polynomial::constant(nv, 1);
  live[0] = 1;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!live[mask] || dp[mask].is_zero()) continue;
    const int row = __builtin_popcountll(mask);
    if (row == size) continue;
    for (int c = 0; c < size; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const Polynomial& entry = mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
      if (entry.is_zero()) continue;
      const int above = __builtin_popcountll(mask >> (c + 1));
      Polynomial term = dp[mask] * entry;
      if (above % 2) term *= Rational(-1);
      const std::size_t next = mask | (std::size_t{1} << c);
      dp[next] += term;
      live[next] = 1;
    }
    dp[mask] = Polynomial(nv);
  }
  return dp[full - 1];
}

Polynomial pseudo_remainder(const Polynomial& p, const Polynomial& q, int var) {
  if (q.is_zero()) throw Error("pseudo_remainder: division by zero");
  const int dq = q.degree(var);
  const Polynomial lq = q.coefficient(var, dq);
  Polynomial r = p;
  while (!r.is_zero() && r.degree(var) >= dq) {
    const int dr = r.degree(var);
    Polynomial lr = r.coefficient(var, dr);
    r = lq * r - lr * Polynomial::variable(p.nvars(), var, dr - dq) * q;
  }
  return r;
}

}  // namespace operad
