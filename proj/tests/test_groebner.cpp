#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "operad/groebner.hpp"
#include "support.hpp"

using namespace operad;
using operad::testing::binary_signature;
using operad::testing::random_monomial;

namespace {

const Signature kM = binary_signature(1);

OperadElement el(const std::string& s, Mode mode = Mode::shuffle, const Signature& sig = kM) {
  return parse_element(s, sig, mode);
}

Presentation corpus(const std::string& name) {
  return load_presentation(std::string(OPERAD_CORPUS_DIR) + "/" + name);
}

OperadElement random_element(const Signature& sig, int n, Mode mode, std::mt19937& rng) {
  OperadElement e;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int i = 0; i < 4; ++i) e.add(random_monomial(sig, n, mode, rng), coef(rng));
  return e;
}

}  // namespace

TEST_CASE("element parsing and formatting") {
  MonomialOrder ord(kM);
  auto e = el("(m (m 1 2) 3) - (m 1 (m 2 3))");
  CHECK(e.size() == 2);
  CHECK(e.arity() == 3);
  CHECK(format_element(e, kM, ord) == "(m (m 1 2) 3) - (m 1 (m 2 3))");
  auto f = el("-1/2 * (m 1 (m 2 3)) + 3 (m (m 1 3) 2)");
  CHECK(f.coefficient(parse_monomial("(m 1 (m 2 3))", kM, Mode::shuffle)) == Rational(-1, 2));
  CHECK(f.coefficient(parse_monomial("(m (m 1 3) 2)", kM, Mode::shuffle)) == 3);
  CHECK(el(format_element(f, kM, ord)) == f);
  auto p = el("(m (m - -) -) - (m - (m - -))", Mode::planar);
  CHECK(p.size() == 2);
  CHECK(el("(m 1 2) - (m 1 2)").is_zero());
  CHECK_THROWS_AS(el("(m 1 2) + (m (m 1 2) 3)"), ParseError);
  CHECK_THROWS_AS(el("(m 1 2) + + (m 1 2)"), ParseError);
  CHECK_THROWS_AS(el("x * (m 1 2)"), ParseError);
}

TEST_CASE("presentation files") {
  auto p = corpus("n-operad.shuffle");
  CHECK(p.mode == Mode::shuffle);
  CHECK(p.signature.size() == 2);
  CHECK(p.relations.size() == 6);
  CHECK(p.is_monomial());
  CHECK(parse_presentation(format_presentation(p)).relations == p.relations);
  CHECK_FALSE(corpus("alia.shuffle").is_monomial());
  CHECK(corpus("magma.shuffle").relations.empty());

  auto line_of = [](const std::string& text) {
    try {
      parse_presentation(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("mode shuffle\ngenerators m:2\nrelations\n(m 2 1)\n") == 4);
  CHECK(line_of("mode shuffle\ngenerators m:2\nrelations\n(m 1 2)\n(m 1 2 3)\n") == 5);
  CHECK(line_of("mode weird\n") == 1);
  CHECK(line_of("mode planar\ngenerators m:1\n") == 2);
  CHECK(line_of("mode planar\ngenerators m:2 m:2\n") == 2);
  CHECK(line_of("mode planar\ngenerators m:2\nprecedence x\n") == 0);
  CHECK(line_of("generators m:2\nrelations\n") == 2);
}

TEST_CASE("reduce: basic cases") {
  MonomialOrder ord(kM);
  auto assoc = el("(m (m 1 2) 3) - (m 1 (m 2 3))");
  std::vector<OperadElement> basis{assoc};
  CHECK(reduce(assoc, basis, ord).is_zero());

  auto planar = el("(m (m - -) -) - (m - (m - -))", Mode::planar);
  std::vector<OperadElement> pb{planar};
  auto r = reduce(el("(m (m (m - -) -) -)", Mode::planar), pb, ord);
  CHECK(r == el("(m - (m - (m - -)))", Mode::planar));

  auto f = el("(m (m (m 1 2) 3) 4) + 2 * (m 1 (m 2 (m 3 4)))", Mode::shuffle);
  CHECK(reduce(f, {}, ord) == f);
  CHECK_THROWS_AS(reduce(f, std::vector<OperadElement>{2 * assoc}, ord), Error);
}

TEST_CASE("reduce is idempotent, normal and certified") {
  std::mt19937 rng(17);
  auto p = corpus("ass.shuffle");
  auto ord = p.order();
  auto g = buchberger(p, ord, {5, 10'000'000});
  auto lms = g.leading_monomials(ord);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_element(p.signature, 3 + trial % 3, Mode::shuffle, rng);
    Trail trail;
    auto r = reduce(f, g.basis, ord, &trail);
    CHECK(reduce(r, g.basis, ord) == r);
    for (const auto& [m, c] : r.terms()) {
      for (const auto& lm : lms) CHECK_FALSE(divides(lm, m));
    }
    CHECK(f - r == evaluate_trail(trail, g.basis));
  }
}

TEST_CASE("overlaps") {
  MonomialOrder ord(kM);
  auto planar = el("(m (m - -) -) - (m - (m - -))", Mode::planar);
  auto ov = overlaps(planar, planar, ord, 8);
  REQUIRE(ov.size() == 1);
  CHECK(ov[0].lcm == parse_monomial("(m (m (m - -) -) -)", kM, Mode::planar));
  std::vector<OperadElement> pb{planar};
  CHECK(reduce(ov[0].s, pb, ord).is_zero());
  CHECK(overlaps(planar, planar, ord, 3).empty());

  auto two = binary_signature(2);
  MonomialOrder ord2(two);
  auto f = parse_element("(n (n - -) -)", two, Mode::planar);
  auto g = parse_element("(m (m - -) -)", two, Mode::planar);
  CHECK(overlaps(f, g, ord2, 8).empty());

  auto mono = el("(m (m 1 2) 3)");
  auto self = overlaps(mono, mono, ord, 5);
  CHECK_FALSE(self.empty());
  for (const auto& o : self) {
    CHECK(o.s.is_zero());
    CHECK(extract(o.lcm, o.first) == mono.terms().begin()->first);
    CHECK(extract(o.lcm, o.second) == mono.terms().begin()->first);
    CHECK(o.first != o.second);
  }
}

TEST_CASE("buchberger on the corpus") {
  SUBCASE("planar associativity is its own Groebner basis") {
    auto p = corpus("ass.planar");
    auto ord = p.order();
    auto g = buchberger(p, ord, {8, 10'000'000});
    REQUIRE(g.basis.size() == 1);
    CHECK(g.complete_below_cap);
    CHECK(g.finite);
    CHECK(g.leading_monomials(ord)[0] == parse_monomial("(m (m - -) -)", kM, Mode::planar));
  }
  SUBCASE("monomial input is returned inter-reduced") {
    auto p = corpus("n-operad.shuffle");
    auto ord = p.order();
    auto g = buchberger(p, ord, {6, 10'000'000});
    CHECK(g.basis.size() == 6);
    CHECK(g.complete_below_cap);
    std::set<TreeMonomial> got;
    for (const auto& m : g.leading_monomials(ord)) got.insert(m);
    auto want = p.monomials();
    CHECK(got == std::set<TreeMonomial>(want.begin(), want.end()));
  }
  SUBCASE("alia has a quadratic basis") {
    auto p = corpus("alia.shuffle");
    auto ord = p.order();
    auto g = buchberger(p, ord, {5, 10'000'000});
    CHECK(g.complete_below_cap);
    for (const auto& b : g.basis) CHECK(b.arity() == 3);
    CHECK(g.basis.size() == 1);
  }
  SUBCASE("raw upper-triangular identity completes to the six monomials") {
    auto p = corpus("upper-triangular.shuffle");
    auto ord = p.order();
    auto g = buchberger(p, ord, {5, 10'000'000});
    CHECK(g.basis.size() == 6);
    for (const auto& b : g.basis) CHECK(b.size() == 1);
    auto n = corpus("n-operad.shuffle");
    auto want = n.monomials();
    std::set<TreeMonomial> got;
    for (const auto& m : g.leading_monomials(ord)) got.insert(m);
    CHECK(got == std::set<TreeMonomial>(want.begin(), want.end()));
  }
}

TEST_CASE("every basis element is certified by its trail") {
  for (std::string name : {"ass.planar", "ass.shuffle", "alia.shuffle", "upper-triangular.shuffle"}) {
    CAPTURE(name);
    auto p = corpus(name);
    auto ord = p.order();
    auto g = buchberger(p, ord, {5, 10'000'000});
    REQUIRE(g.trails.size() == g.basis.size());
    for (std::size_t i = 0; i < g.basis.size(); ++i) {
      CHECK(evaluate_trail(g.trails[i], p.relations) == g.basis[i]);
    }
    // All overlaps within the cap reduce to zero.
    for (const auto& f : g.basis) {
      for (const auto& h : g.basis) {
        for (const auto& o : overlaps(f, h, ord, 5)) CHECK(reduce(o.s, g.basis, ord).is_zero());
      }
    }
  }
}

TEST_CASE("leading monomials do not depend on the relation order") {
  auto p = corpus("ass.shuffle");
  auto ord = p.order();
  auto base = buchberger(p, ord, {5, 10'000'000}).leading_monomials(ord);
  std::mt19937 rng(1);
  for (int trial = 0; trial < 4; ++trial) {
    std::shuffle(p.relations.begin(), p.relations.end(), rng);
    auto lms = buchberger(p, ord, {5, 10'000'000}).leading_monomials(ord);
    CHECK(std::set<TreeMonomial>(lms.begin(), lms.end()) ==
          std::set<TreeMonomial>(base.begin(), base.end()));
  }
}

TEST_CASE("budget exhaustion reports a partial basis") {
  auto p = corpus("ass.shuffle");
  auto g = buchberger(p, p.order(), {6, 50});
  CHECK(g.budget_exhausted);
  CHECK_FALSE(g.complete_below_cap);
  CHECK_FALSE(g.finite);
}
