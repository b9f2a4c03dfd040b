#include <cmath>

#include "doctest.h"
#include "operad/bounds.hpp"
#include "support.hpp"

using namespace operad;

namespace {

Presentation corpus(const std::string& name) {
  return load_presentation(std::string(OPERAD_CORPUS_DIR) + "/" + name);
}

PowerSeries egf(int order, std::initializer_list<std::pair<int, Rational>> terms) {
  PowerSeries s(Flavor::egf, order);
  for (const auto& [k, c] : terms) s.set(k, c);
  return s;
}

}  // namespace

TEST_CASE("GS input of alia") {
  auto in = gs_input(corpus("alia.shuffle"), 8);
  CHECK(in.x == egf(8, {{2, Rational(1)}}));
  CHECK(in.r == egf(8, {{3, Rational(1) / 6}}));
  auto planar = gs_input(corpus("ass.planar"), 5);
  CHECK(planar.x.flavor() == Flavor::ogf);
  CHECK(planar.x[2] == 1);
  CHECK(planar.r[3] == 1);
}

TEST_CASE("GS lower bound") {
  SUBCASE("alia") {
    auto b = gs_lower_bound(gs_input(corpus("alia.shuffle"), 9), 9);
    const Rational want[] = {0, 1, 1, Rational(11, 6), Rational(25, 6), Rational(127, 12),
                             Rational(259, 9), Rational(1475, 18), Rational(17369, 72),
                             Rational(943855, 1296)};
    for (int n = 0; n <= 9; ++n) CHECK(b.series[n] == want[n]);
    const long dims[] = {0, 1, 2, 11, 100, 1270, 20720, 413000};
    for (int n = 1; n <= 7; ++n) CHECK(b.dim(n) == dims[n]);
    CHECK(b.nonnegative);
  }
  SUBCASE("Catalan") {
    PowerSeries x(Flavor::ogf, 10);
    x.set(2, 1);
    auto b = gs_lower_bound({x, PowerSeries(Flavor::ogf, 10)}, 10);
    const int catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
    for (int n = 1; n <= 10; ++n) CHECK(b.series[n] == catalan[n - 1]);
    CHECK(b.hypothesis);
  }
  SUBCASE("no generators") {
    auto b = gs_lower_bound({PowerSeries(Flavor::egf, 6), PowerSeries(Flavor::egf, 6)}, 6);
    CHECK(b.series == PowerSeries::z(Flavor::egf, 6));
  }
  SUBCASE("hypotheses") {
    auto bad = egf(6, {{1, Rational(1)}});
    CHECK_THROWS_AS(gs_lower_bound({bad, PowerSeries(Flavor::egf, 6)}, 6), HypothesisError);
    // t/f(t) with f = t - t^2 + t^3 has a negative coefficient.
    auto r = egf(6, {{3, Rational(1)}});
    auto b = gs_lower_bound({egf(6, {{2, Rational(1)}}), r}, 6);
    CHECK_FALSE(b.hypothesis);
  }
}

TEST_CASE("binary bracket for (c, d) = (2, 1)") {
  auto b = binary_bounds(2, egf(6, {{3, Rational(1) / 6}}), 6);
  CHECK(b.quadratic);
  CHECK(b.d == 1);
  CHECK(b.condition);
  REQUIRE(b.root_found);
  CHECK(b.z0_radical == "3 - sqrt(3)");
  const double z1 = 3 - std::sqrt(3.0);
  CHECK(b.z0_hi - b.z0_lo < Rational(1) / Rational("1000000000000"));
  CHECK(b.z0_lo.get_d() <= z1 + 1e-15);
  CHECK(b.z0_hi.get_d() >= z1 - 1e-15);
  // z1 solves z^2 - 6z + 6 = 0: the bracket straddles the sign change.
  auto phi = [](const Rational& z) -> Rational { return z * z - 6 * z + 6; };
  CHECK(sgn(phi(b.z0_lo)) * sgn(phi(b.z0_hi)) <= 0);

  REQUIRE(b.rows.size() == 5);
  const long dims[] = {0, 1, 2, 11, 100, 1270, 20720};
  const double corrected[] = {0, 1.577, 7.464, 58.87, 649.98, 9227.3};
  for (const auto& row : b.rows) {
    CAPTURE(row.n);
    CHECK(row.upper == factorial_quotient(row.n));
    CHECK(row.gs == dims[row.n + 1]);
    CHECK(row.sandwich);
    const double exact = factorial_quotient(row.n).get_d() * std::pow(z1, -row.n);
    CHECK(exact == doctest::Approx(corrected[row.n]).epsilon(0.001));
    CHECK(row.lower.get_d() == std::ceil(exact));
    CHECK(row.lower_printed == doctest::Approx(row.n * factorial_quotient(row.n).get_d() * std::pow(z1, -row.n)));
  }
  // The literal (n-1)! form overshoots dim(3) = 11.
  CHECK(b.rows[1].lower_printed > 11);
}

TEST_CASE("binary bracket edge cases") {
  auto fail = binary_bounds(2, egf(6, {{3, Rational(2) / 6}}), 6);
  CHECK(fail.quadratic);
  CHECK_FALSE(fail.condition);
  CHECK(fail.rows.empty());

  // Boundary d = 3c^2/8: double root, located exactly.
  auto edge = binary_bounds(4, egf(6, {{3, Rational(1)}}), 5);
  CHECK(edge.condition);
  REQUIRE(edge.root_found);
  CHECK(edge.z0_lo == edge.z0_hi);
  CHECK(edge.z0_lo == 1);

  // Without relations phi is linear, z0 = 2/c and the bracket is tight.
  auto free = binary_bounds(2, PowerSeries(Flavor::egf, 6), 6);
  REQUIRE(free.root_found);
  CHECK(free.z0_lo == 1);
  for (const auto& row : free.rows) {
    CHECK(row.lower == row.upper);
    CHECK(row.gs == Rational(row.upper));
  }
  CHECK_THROWS_AS(binary_bounds(0, PowerSeries(Flavor::egf, 4), 4), HypothesisError);
}

TEST_CASE("partial Groebner bound") {
  auto ass = corpus("ass.planar");
  auto t = partial_gb_bound(ass, ass.order(), GroebnerOptions{6}, 10);
  for (int n = 1; n <= 10; ++n) CHECK(t.dim(n) == 1);

  auto alia = corpus("alia.shuffle");
  auto u = partial_gb_bound(alia, alia.order(), GroebnerOptions{5}, 6);
  const long dims[] = {0, 1, 2, 11, 100};
  for (int n = 1; n <= 4; ++n) CHECK(u.dim(n) == dims[n]);
  auto gs = gs_lower_bound(gs_input(alia, 6), 6);
  for (int n = 1; n <= 6; ++n) CHECK(gs.dim(n) <= Rational(u.dim(n)));
}

TEST_CASE("growth report") {
  std::vector<Integer> powers{0, 1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048};
  auto g = growth_report(powers, Flavor::ogf);
  REQUIRE(g.rational);
  REQUIRE(g.exact_exponent);
  CHECK(*g.exact_exponent == 2);
  CHECK(g.rows.back().root == doctest::Approx(std::pow(2048.0, 1.0 / 12)));

  std::vector<Integer> ones(12, 1);
  ones[0] = 0;
  auto h = growth_report(ones, Flavor::ogf);
  REQUIRE(h.exact_exponent);
  CHECK(*h.exact_exponent == 1);

  std::vector<Integer> poly{0, 1, 3, 0, 0, 0, 0, 0, 0, 0};
  auto p = growth_report(poly, Flavor::ogf);
  REQUIRE(p.exact_exponent);
  CHECK(*p.exact_exponent == 0);

  std::vector<Integer> n_dims{0, 1, 2, 12, 114, 1500, 25290};
  auto r = growth_report(n_dims, Flavor::egf);
  CHECK_FALSE(r.exact_exponent);
  const std::string text = r.text();
  CHECK(text.find("estimate") != std::string::npos);
  CHECK(text.find("limit") == std::string::npos);
  CHECK(g.text().find("limit") == std::string::npos);

  CHECK_THROWS_AS(growth_report({0, 1, 2, 3}, Flavor::ogf), Error);
}
