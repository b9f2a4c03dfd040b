#include <set>

#include "doctest.h"
#include "operad/monomial.hpp"
#include "operad/order.hpp"
#include "support.hpp"

using namespace operad;
using operad::testing::binary_signature;
using operad::testing::random_monomial;
using operad::testing::random_region;

namespace {

const Signature kFig1{{{"f", 2}, {"g", 3}}};
const Signature kM = binary_signature(1);
const Signature kN{{{"mu", 2}, {"alpha", 2}}};

TreeMonomial sh(const std::string& s, const Signature& sig = kM) {
  return parse_monomial(s, sig, Mode::shuffle);
}
TreeMonomial pl(const std::string& s, const Signature& sig = kM) {
  return parse_monomial(s, sig, Mode::planar);
}

std::vector<TreeMonomial> n_monomials() {
  std::vector<TreeMonomial> out;
  for (std::string g : {"mu", "alpha"}) {
    for (std::string pair : {"(alpha 1 2) (alpha 3 4)", "(alpha 1 3) (alpha 2 4)",
                             "(alpha 1 4) (alpha 2 3)"}) {
      out.push_back(sh("(" + g + " " + pair + ")", kN));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("parse: left comb has arity 3 and weight 2") {
  auto m = sh("(m (m 1 2) 3)");
  CHECK(m.arity() == 3);
  CHECK(m.weight() == 2);
  CHECK(m.depth() == 2);
  CHECK(format_monomial(m, kM) == "(m (m 1 2) 3)");
  CHECK(format_monomial(pl("(m (m - -) -)"), kM) == "(m (m - -) -)");
}

TEST_CASE("parse: the arity-11 monomial of the divisibility figure is a shuffle monomial") {
  auto m = sh("(g (f (f 1 3) (g 2 (f 4 9) (g 5 6 11))) 7 (f 8 10))", kFig1);
  CHECK(m.arity() == 11);
  CHECK(is_shuffle(m));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(sh("(m 2 1)"), ParseError);
  CHECK_THROWS_WITH_AS(sh("(m 2 1)"), doctest::Contains("leftmost"), ParseError);
  CHECK_THROWS_AS(sh("(m 1 2 3)"), ParseError);
  CHECK_THROWS_AS(sh("(m 1)"), ParseError);
  CHECK_THROWS_AS(sh("(m 1 1)"), ParseError);
  CHECK_THROWS_AS(sh("(m 1 3)"), ParseError);
  CHECK_THROWS_AS(sh("(x 1 2)"), ParseError);
  CHECK_THROWS_AS(sh("(m 1 2"), ParseError);
  CHECK_THROWS_AS(sh("(m 1 2) 3"), ParseError);
  CHECK_THROWS_AS(sh("(m - -)"), ParseError);
  CHECK_THROWS_AS(pl("(m 1 2)"), ParseError);
  CHECK(sh("Id").is_identity());
  CHECK(sh("1").is_identity());
}

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(Signature({{"u", 1}}), Error);
  CHECK_THROWS_AS(Signature({{"m", 2}, {"m", 3}}), Error);
  CHECK_THROWS_AS(Signature({{"Id", 2}}), Error);
}

TEST_CASE("is_shuffle on small monomials") {
  CHECK(is_shuffle(sh("(m 1 2)")));
  CHECK_FALSE(is_shuffle(TreeMonomial::from_vertices_unchecked(
      {Vertex{0, 2}, Vertex{kLeaf, 2}, Vertex{kLeaf, 1}}, Mode::shuffle)));
  CHECK_THROWS_AS(TreeMonomial::from_vertices({Vertex{0, 2}, Vertex{kLeaf, 2}, Vertex{kLeaf, 1}},
                                              Mode::shuffle),
                  HypothesisError);
}

TEST_CASE("round trip parse(format(m)) == m") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& m : enumerate_free(kM, n, Mode::planar)) {
      REQUIRE(pl(format_monomial(m, kM)) == m);
    }
  }
  auto two = binary_signature(2);
  for (int n = 1; n <= 5; ++n) {
    for (const auto& m : enumerate_free(two, n, Mode::shuffle)) {
      REQUIRE(sh(format_monomial(m, two), two) == m);
    }
  }
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto m = random_monomial(kFig1, 6 + i % 3, Mode::shuffle, rng);
    REQUIRE(sh(format_monomial(m, kFig1), kFig1) == m);
  }
}

TEST_CASE("compose: identity law and planar left comb") {
  auto id = TreeMonomial::identity(Mode::planar);
  auto m = pl("(m - -)");
  CHECK(compose(id, 1, m) == m);
  CHECK(compose(m, 1, id) == m);
  CHECK(compose(m, 1, m) == pl("(m (m - -) -)"));
  CHECK(compose(m, 2, m) == pl("(m - (m - -))"));
  CHECK_THROWS_AS(compose(m, 3, m), Error);
}

TEST_CASE("shuffle compositions of m(1,2) into slot 1 of m(1,2)") {
  auto m = sh("(m 1 2)");
  auto all = shuffle_compositions(m, 1, m);
  REQUIRE(all.size() == 2);
  std::set<TreeMonomial> got(all.begin(), all.end());
  CHECK(got.count(sh("(m (m 1 2) 3)")));
  CHECK(got.count(sh("(m (m 1 3) 2)")));
  // Cross-check against every relabelling filtered by is_shuffle.
  std::vector<std::int32_t> perm{1, 2, 3};
  std::set<TreeMonomial> brute;
  do {
    try {
      brute.insert(compose(m, 1, m, perm));
    } catch (const HypothesisError&) {
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(brute == got);
}

TEST_CASE("composition associativity on random triples") {
  std::mt19937 rng(11);
  auto sig = binary_signature(2);
  int defined = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Mode mode = trial % 2 ? Mode::shuffle : Mode::planar;
    auto a = random_monomial(sig, 1 + trial % 3, mode, rng);
    auto b = random_monomial(sig, 1 + (trial / 3) % 3, mode, rng);
    auto c = random_monomial(sig, 1 + (trial / 9) % 2, mode, rng);
    const int na = a.arity(), nb = b.arity();
    int i = std::uniform_int_distribution<int>(1, na)(rng);
    int j = std::uniform_int_distribution<int>(1, na + nb - 1)(rng);
    try {
      auto lhs = compose(compose(a, i, b), j, c);
      TreeMonomial rhs;
      if (j < i) {
        rhs = compose(compose(a, j, c), i + c.arity() - 1, b);
      } else if (j < i + nb) {
        rhs = compose(a, i, compose(b, j - i + 1, c));
      } else {
        rhs = compose(compose(a, j - nb + 1, c), i, b);
      }
      CHECK(lhs == rhs);
      ++defined;
    } catch (const HypothesisError&) {
    }
  }
  CHECK(defined > 200);
}

TEST_CASE("divisibility: figure example, self occurrence, planar shapes") {
  auto big = sh("(g (f (f 1 3) (g 2 (f 4 9) (g 5 6 11))) 7 (f 8 10))", kFig1);
  auto q = sh("(f 1 (g 2 3 4))", kFig1);
  CHECK(divides(q, big));
  auto occs = occurrences(q, big);
  REQUIRE(occs.size() == 1);
  CHECK(extract(big, occs[0]) == q);

  CHECK(occurrences(big, big).size() == 1);
  CHECK_FALSE(divides(pl("(m (m - -) -)"), pl("(m - (m - -))")));
  CHECK(divides(pl("(m (m - -) -)"), pl("(m - (m (m - -) -))")));
  // Order-isomorphism of induced labels matters in shuffle mode.
  CHECK(divides(sh("(m (m 1 2) 3)"), sh("(m (m (m 1 2) 4) 3)")));
  CHECK_FALSE(divides(sh("(m (m 1 2) 3)"), sh("(m (m 1 3) 2)")));
  CHECK(divides(sh("(m (m 1 3) 2)"), sh("(m (m (m 1 2) 4) 3)")));
}

TEST_CASE("every occurrence passes the independent re-check") {
  std::mt19937 rng(3);
  auto sig = binary_signature(2);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Mode mode = trial % 2 ? Mode::shuffle : Mode::planar;
    auto host = random_monomial(sig, 5 + trial % 3, mode, rng);
    auto region = random_region(host, rng);
    auto q = extract(host, region);
    auto occs = occurrences(q, host);
    bool seen = false;
    for (const auto& occ : occs) {
      CHECK(extract(host, occ) == q);
      seen = seen || occ == region;
    }
    CHECK(seen);
    found += static_cast<int>(occs.size());
    // Substituting the divisor back is the identity.
    CHECK(substitute(host, region, q) == host);
  }
  CHECK(found >= 300);
}

TEST_CASE("divisibility is transitive") {
  std::mt19937 rng(5);
  auto sig = binary_signature(2);
  for (int trial = 0; trial < 300; ++trial) {
    const Mode mode = trial % 2 ? Mode::shuffle : Mode::planar;
    auto r = random_monomial(sig, 6, mode, rng);
    auto p = extract(r, random_region(r, rng));
    auto q = extract(p, random_region(p, rng));
    REQUIRE(divides(p, r));
    REQUIRE(divides(q, p));
    CHECK(divides(q, r));
    // Unrelated triples: the implication must hold whenever its premise does.
    auto a = random_monomial(sig, 3, mode, rng);
    auto b = random_monomial(sig, 4, mode, rng);
    if (divides(a, b) && divides(b, r)) CHECK(divides(a, r));
  }
}

TEST_CASE("enumerate_free counts") {
  const int catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n <= 8; ++n) {
    CHECK(enumerate_free(kM, n, Mode::planar).size() == static_cast<std::size_t>(catalan[n - 1]));
  }
  // One binary shuffle generator: (2n-3)!! monomials.
  const int dfact[] = {1, 1, 3, 15, 105, 945};
  for (int n = 1; n <= 6; ++n) {
    CHECK(enumerate_free(kM, n, Mode::shuffle).size() == static_cast<std::size_t>(dfact[n - 1]));
  }
  auto two = enumerate_free(binary_signature(2), 3, Mode::shuffle);
  CHECK(two.size() == 12);
  std::set<TreeMonomial> distinct(two.begin(), two.end());
  CHECK(distinct.size() == 12);
  // Brute force: every labelling of every shape, filtered by is_shuffle.
  std::size_t brute = 0;
  for (const auto& s : planar_shapes(binary_signature(2), 3)) {
    std::vector<std::int32_t> perm{1, 2, 3};
    do {
      std::vector<Vertex> v(s.vertices().begin(), s.vertices().end());
      std::size_t k = 0;
      for (auto& x : v) {
        if (x.is_leaf()) x.value = perm[k++];
      }
      brute += is_shuffle(TreeMonomial::from_vertices_unchecked(v, Mode::shuffle));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  CHECK(brute == 12);
  auto one = enumerate_free(kM, 1, Mode::shuffle);
  REQUIRE(one.size() == 1);
  CHECK(one[0].is_identity());
}

TEST_CASE("regularity") {
  auto ms = n_monomials();
  CHECK(is_shuffle_regular(ms));
  CHECK(is_symmetric_regular(ms));
  std::vector<TreeMonomial> left{sh("(m (m 1 2) 3)")};
  CHECK_FALSE(is_shuffle_regular(left));
  auto w = regularity_witness(left, Regularity::shuffle);
  REQUIRE(w);
  CHECK(*w == sh("(m (m 1 3) 2)"));
  CHECK(regular_closure(left, Regularity::shuffle).size() == 2);
  CHECK(regular_closure(left, Regularity::symmetric).size() == 3);
  std::vector<TreeMonomial> none;
  CHECK(is_shuffle_regular(none));
  CHECK(is_symmetric_regular(none));
}

TEST_CASE("inter_reduce and truncate_shape") {
  std::vector<TreeMonomial> ms{pl("(m - (m (m - -) -))"), pl("(m (m - -) -)"),
                               pl("(m (m - -) -)")};
  auto r = inter_reduce(ms);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == pl("(m (m - -) -)"));
  auto t = truncate_shape(sh("(m (m 1 3) (m 2 4))"), 1);
  CHECK(t == pl("(m - -)"));
  CHECK(truncate_shape(sh("(m (m 1 3) 2)"), 0).is_identity());
  CHECK(truncate_shape(sh("(m (m 1 3) 2)"), 5) == pl("(m (m - -) -)"));
}

TEST_CASE("order: left comb is larger, totality") {
  MonomialOrder ord(kM);
  auto left = sh("(m (m 1 2) 3)"), right = sh("(m 1 (m 2 3))");
  CHECK(ord.compare(left, right) > 0);
  CHECK(ord.compare(left, left) == 0);
  CHECK(ord.compare(pl("(m (m - -) -)"), pl("(m - (m - -))")) > 0);
  CHECK_THROWS_AS(ord.compare(left, sh("(m 1 2)")), Error);
  auto all = enumerate_free(binary_signature(2), 4, Mode::shuffle);
  MonomialOrder ord2(binary_signature(2));
  for (std::size_t i = 0; i + 1 < all.size(); ++i) CHECK(ord2.compare(all[i], all[i + 1]) < 0);
}

TEST_CASE("order is compatible with compositions on 1000 random triples") {
  std::mt19937 rng(2024);
  auto sig = binary_signature(2);
  MonomialOrder ord(sig, {1, 0});
  int checked = 0;
  for (int trial = 0; checked < 1000; ++trial) {
    const Mode mode = trial % 2 ? Mode::shuffle : Mode::planar;
    auto host = random_monomial(sig, 4 + trial % 4, mode, rng);
    auto region = random_region(host, rng);
    const int k = static_cast<int>(region.cuts.size());
    auto q = random_monomial(sig, k, mode, rng);
    auto q2 = random_monomial(sig, k, mode, rng);
    auto c1 = ord.compare(q, q2);
    auto c2 = ord.compare(substitute(host, region, q), substitute(host, region, q2));
    REQUIRE(c1 == c2);
    ++checked;
  }
}
