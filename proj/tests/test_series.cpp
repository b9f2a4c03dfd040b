#include <random>

#include "doctest.h"
#include "operad/series.hpp"

using namespace operad;

namespace {

PowerSeries ser(Flavor f, std::vector<Rational> c) { return PowerSeries(f, std::move(c)); }

PowerSeries random_series(std::mt19937& rng, int order, bool zero_constant) {
  std::uniform_int_distribution<int> d(-5, 5);
  PowerSeries s(Flavor::egf, order);
  for (int n = zero_constant ? 1 : 0; n <= order; ++n) s.set(n, Rational(d(rng)) / (1 + (d(rng) + 5) % 4));
  return s;
}

// Independent oracle: coefficients of the total N-operad series, z^0..z^13.
std::vector<Rational> n_series_oracle() {
  return {0, 1, 1, 2, Rational(19, 4), Rational(25, 2), Rational(281, 8), Rational(413, 4),
          Rational(20071, 64), Rational(31249, 32), Rational(396887, 128), Rational(640079, 64),
          Rational(16731551, 512), Rational(27632501, 256)};
}

}  // namespace

TEST_CASE("basic arithmetic and truncation") {
  auto z = PowerSeries::z(Flavor::ogf, 6);
  auto geo = reciprocal(PowerSeries::constant(Flavor::ogf, 6, 1) - z);
  for (int n = 0; n <= 6; ++n) CHECK(geo[n] == 1);
  CHECK(power(z, 3).valuation() == 3);
  CHECK((geo * z.truncate(3)).order() == 3);
  CHECK_THROWS_AS(geo[7], Error);
  CHECK_THROWS_AS(geo + z.with_flavor(Flavor::egf), Error);
  CHECK(format_series(z.truncate(3)) == "ogf 3; 0 1 0 0");
}

TEST_CASE("derivative and integral") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto f = random_series(rng, 10, false);
    CHECK(derive(integrate(f)) == f);
    auto g = integrate(derive(f));
    CHECK(g[0] == 0);
    for (int n = 1; n <= 10; ++n) CHECK(g[n] == f[n]);
  }
  CHECK(integrate(PowerSeries::constant(Flavor::egf, 4, 1)).order() == 5);
}

TEST_CASE("C operation") {
  auto z = PowerSeries::z(Flavor::egf, 8);
  auto zz = c_operation(z, z);
  for (int n = 0; n <= zz.order(); ++n) CHECK(zz[n] == (n == 2 ? Rational(1, 2) : Rational(0)));
  auto z2z = c_operation(power(z, 2), z);
  CHECK(z2z[3] == Rational(2, 3));
  for (int n = 0; n <= z2z.order(); ++n) {
    if (n != 3) CHECK(z2z[n] == 0);
  }
  // C(f, g) + C(g, f) = f g for f(0) = g(0) = 0.
  std::mt19937 rng(11);
  for (int t = 0; t < 25; ++t) {
    auto f = random_series(rng, 9, true);
    auto g = random_series(rng, 9, true);
    auto lhs = c_operation(f, g) + c_operation(g, f);
    CHECK(lhs == (f * g).truncate(lhs.order()));
  }
}

TEST_CASE("composition and Lagrange inversion") {
  auto z = PowerSeries::z(Flavor::ogf, 10);
  auto f = z - power(z, 2);
  auto g = lagrange_inverse(f, 10);
  const int catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
  CHECK(g[0] == 0);
  for (int n = 1; n <= 10; ++n) CHECK(g[n] == catalan[n - 1]);
  CHECK(compose(f, g) == z);
  CHECK(compose(g, f) == z);

  auto ze = PowerSeries::z(Flavor::egf, 9);
  auto alia = lagrange_inverse(ze - power(ze, 2) + Rational(1, 6) * power(ze, 3), 9);
  const Rational want[] = {1, 1, Rational(11, 6), Rational(25, 6), Rational(127, 12),
                           Rational(259, 9), Rational(1475, 18), Rational(17369, 72),
                           Rational(943855, 1296)};
  for (int n = 1; n <= 9; ++n) CHECK(alia[n] == want[n - 1]);
  auto dims = dims_of(alia);
  CHECK(dims[1] == 1);
  CHECK(dims[2] == 2);
  CHECK(dims[3] == 11);
  CHECK(dims[4] == 100);
  CHECK(dims[5] == 1270);
  CHECK(dims[6] == 20720);
  CHECK(dims[7] == 413000);

  CHECK_THROWS_AS(lagrange_inverse(power(z, 2), 5), HypothesisError);
  CHECK_THROWS_AS(lagrange_inverse(z.truncate(4), 5), InsufficientOrder);
  CHECK_THROWS_AS(compose(z, z + PowerSeries::constant(Flavor::ogf, 10, 1)), HypothesisError);
}

TEST_CASE("flavour conversion") {
  auto e = ser(Flavor::egf, {0, 1, Rational(1, 2), Rational(1, 6)});
  auto o = flavor_convert(e, Flavor::ogf);
  CHECK(o == ser(Flavor::ogf, {0, 1, 1, 1}));
  CHECK(flavor_convert(o, Flavor::egf) == e);
  std::vector<Integer> ns{0, 1, 1, 2};
  auto sym = symmetrize_dims(ns);
  CHECK(sym == std::vector<Integer>{0, 1, 2, 12});
  CHECK_THROWS_AS(dims_of(ser(Flavor::ogf, {0, Rational(1, 2)})), Error);
}

TEST_CASE("algebraic and differential verification") {
  auto n = ser(Flavor::egf, n_series_oracle());
  // 3Y^2 + 2zY - 4Y - z^2 + 4z over (z, Y).
  Polynomial q(2);
  q.add_term({0, 2}, 3);
  q.add_term({1, 1}, 2);
  q.add_term({0, 1}, -4);
  q.add_term({2, 0}, -1);
  q.add_term({1, 0}, 4);
  CHECK(verify_algebraic(q, n));
  Polynomial wrong = q;
  wrong.add_term({2, 0}, 1);
  CHECK_FALSE(verify_algebraic(wrong, n));
  CHECK_THROWS_AS(verify_algebraic(q, n.truncate(7)), InsufficientOrder);

  // (y' - 1)(2 - z - 3y) - 4y over (z, y, y').
  Polynomial d(3);
  d.add_term({0, 0, 1}, 2);
  d.add_term({1, 0, 1}, -1);
  d.add_term({0, 1, 1}, -3);
  d.add_term({0, 0, 0}, -2);
  d.add_term({1, 0, 0}, 1);
  d.add_term({0, 1, 0}, 3);
  d.add_term({0, 1, 0}, -4);
  auto ode = DiffPolynomial::single(d, 1);
  CHECK(ode.max_derivative() == 1);
  CHECK(verify_ode(ode, n));
  auto perturbed = n;
  perturbed.set(9, perturbed[9] + 1);
  CHECK_FALSE(verify_ode(ode, perturbed));
  CHECK_THROWS_AS(verify_ode(ode, n.truncate(4)), InsufficientOrder);
}

TEST_CASE("rational guessing") {
  auto z = PowerSeries::z(Flavor::ogf, 14);
  auto one = PowerSeries::constant(Flavor::ogf, 14, 1);
  auto a = z * reciprocal(one - z);
  auto ra = guess_rational(a);
  REQUIRE(ra);
  CHECK(ra->den == std::vector<Rational>{1, -1});
  CHECK(ra->num == std::vector<Rational>{0, 1});
  CHECK(ra->expand(Flavor::ogf, 14) == a);
  CHECK(ra->format() == "(z)/(-z + 1)");

  auto b = z * reciprocal(one - 2 * z);
  auto rb = guess_rational(b);
  REQUIRE(rb);
  CHECK(rb->den == std::vector<Rational>{1, -2});

  auto c = (one - z) * reciprocal(one - 3 * z + Rational(2) * power(z, 2));
  auto rc = guess_rational(c);
  REQUIRE(rc);
  CHECK(rc->expand(Flavor::ogf, 14) == c);
  CHECK(rc->den.size() <= 3);

  auto cat = lagrange_inverse(z - power(z, 2), 14);
  CHECK_FALSE(guess_rational(cat));
  CHECK_FALSE(guess_rational(z.truncate(4)));
}

TEST_CASE("linear algebra helpers") {
  auto x = solve_linear({{2, 1}, {1, 3}}, {3, 5});
  REQUIRE(x);
  CHECK((*x)[0] == Rational(4, 5));
  CHECK((*x)[1] == Rational(7, 5));
  CHECK_FALSE(solve_linear({{1, 2}, {2, 4}}, {1, 2}));
  auto ns = null_space({{1, 2, 3}, {2, 4, 6}}, 3);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
}

TEST_CASE("polynomials, resultants, pseudo-remainders") {
  // Variables (x, y).
  auto x = Polynomial::variable(2, 0);
  auto y = Polynomial::variable(2, 1);
  auto one = Polynomial::constant(2, 1);
  CHECK(resultant(x * x - y, x - one, 0) == one - y);
  // Res_x(x - a, x - b) = a - b, with a = y, b = 2.
  CHECK(resultant(x - y, x - 2 * one, 0) == y - 2 * one);
  // Common root gives a zero resultant.
  CHECK(resultant((x - one) * (x + one), (x - one) * (x + y), 0).is_zero());
  // Res_x(x^2 + xy + 1, 2x + y) = 4 - y^2.
  auto r = resultant(x * x + x * y + one, 2 * x + y, 0);
  CHECK(r.primitive() == (y * y - 4 * one).primitive());
  CHECK(pseudo_remainder(x * x - one, x - one, 0).is_zero());
  CHECK(pseudo_remainder(x * x, x - y, 0) == y * y);
  auto p = 4 * (y * y) - 2 * x;
  CHECK(p.primitive() == Rational(2) * (y * y) - x);
  CHECK(p.format({"x", "y"}) == "4*y^2 - 2*x");
  CHECK((x + y).pow(2).total_degree() == 2);
  CHECK((x * y).substitute(1, x) == x * x);
  CHECK((x * x * y).derivative(0) == 2 * (x * y));
}
