#include <map>
#include <random>

#include "doctest.h"
#include "operad/enumeration.hpp"
#include "support.hpp"

using namespace operad;
using operad::testing::binary_signature;
using operad::testing::random_monomial;

namespace {

Presentation corpus(const std::string& name) {
  return load_presentation(std::string(OPERAD_CORPUS_DIR) + "/" + name);
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out{Integer(0)};
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Swaps generators 0 and 1 throughout a monomial.
TreeMonomial swap_generators(const TreeMonomial& m) {
  std::vector<Vertex> v(m.vertices().begin(), m.vertices().end());
  for (auto& x : v) {
    if (!x.is_leaf()) x.gen = 1 - x.gen;
  }
  return TreeMonomial::from_vertices(std::move(v), m.mode());
}

}  // namespace

TEST_CASE("planar monomial associativity has one monomial per arity") {
  auto sig = binary_signature(1);
  std::vector<TreeMonomial> forbid{parse_monomial("(m (m - -) -)", sig, Mode::planar)};
  auto t = normal_dims(Mode::planar, sig, forbid, 10);
  CHECK_FALSE(t.budget_exhausted);
  for (int n = 1; n <= 10; ++n) CHECK(t.dim(n) == 1);
}

TEST_CASE("free operads") {
  auto sig = binary_signature(1);
  auto planar = normal_dims(Mode::planar, sig, {}, 10);
  CHECK(planar.dims() == ints({1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862}));
  auto shuffle = normal_dims(Mode::shuffle, sig, {}, 6);
  CHECK(shuffle.dims() == ints({1, 1, 3, 15, 105, 945}));
  auto two = binary_signature(2);
  auto t = normal_dims(Mode::shuffle, two, {}, 5);
  for (int n = 1; n <= 5; ++n) {
    CHECK(t.dim(n) == static_cast<long>(enumerate_free(two, n, Mode::shuffle).size()));
  }
}

TEST_CASE("operad N") {
  auto p = corpus("n-operad.shuffle");
  auto t = normal_dims(p, 6);
  CHECK(t.dims() == ints({1, 2, 12, 114, 1500, 25290}));
}

TEST_CASE("counts agree with brute-force filtering") {
  std::mt19937 rng(5);
  auto sig = binary_signature(2);
  for (int trial = 0; trial < 12; ++trial) {
    const Mode mode = trial % 2 ? Mode::planar : Mode::shuffle;
    std::vector<TreeMonomial> forbid;
    const int k = 1 + trial % 3;
    for (int i = 0; i < k; ++i) forbid.push_back(random_monomial(sig, 3 + (trial + i) % 2, mode, rng));
    auto t = normal_dims(mode, sig, forbid, 5);
    for (int n = 1; n <= 5; ++n) {
      CAPTURE(trial);
      CAPTURE(n);
      CHECK(t.dim(n) == static_cast<long>(normal_monomials(mode, sig, forbid, n).size()));
    }
  }
}

TEST_CASE("monotonicity and generator renaming") {
  std::mt19937 rng(9);
  auto sig = binary_signature(2);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<TreeMonomial> forbid;
    auto before = normal_dims(Mode::shuffle, sig, forbid, 5).dims();
    for (int i = 0; i < 4; ++i) {
      forbid.push_back(random_monomial(sig, 3, Mode::shuffle, rng));
      auto after = normal_dims(Mode::shuffle, sig, forbid, 5).dims();
      for (std::size_t n = 0; n < after.size(); ++n) CHECK(after[n] <= before[n]);
      before = after;
    }
    std::vector<TreeMonomial> swapped;
    for (const auto& m : forbid) swapped.push_back(swap_generators(m));
    CHECK(normal_dims(Mode::shuffle, sig, swapped, 5).dims() == before);
  }
}

TEST_CASE("dimensions of quotients") {
  SUBCASE("associativity") {
    auto p = corpus("ass.planar");
    auto t = dims_of_quotient(p, p.order(), {8, 10'000'000}, 10);
    for (int n = 1; n <= 10; ++n) CHECK(t.dim(n) == 1);
    CHECK(t.rows.back().tag == DimTag::exact);
    auto s = corpus("ass.shuffle");
    auto ts = dims_of_quotient(s, s.order(), {5, 10'000'000}, 5);
    CHECK(ts.dims() == ints({1, 2, 6, 24, 120}));
  }
  SUBCASE("alia") {
    auto p = corpus("alia.shuffle");
    auto t = dims_of_quotient(p, p.order(), {5, 10'000'000}, 5);
    CHECK(t.dims() == ints({1, 2, 11, 100, 1270}));
    CHECK(t.rows[3].tag == DimTag::certified_below_cap);
  }
  SUBCASE("no relations") {
    auto p = corpus("magma.shuffle");
    auto t = dims_of_quotient(p, p.order(), {5, 10'000'000}, 5);
    CHECK(t.dims() == ints({1, 2, 12, 120, 1680}));
  }
}

TEST_CASE("budget and export") {
  auto p = corpus("n-operad.shuffle");
  auto t = normal_dims(p, 6, 2000);
  CHECK(t.budget_exhausted);
  CHECK(t.max_arity() < 6);
  CHECK_THROWS_AS(t.dim(6), Error);
  auto sig = binary_signature(1);
  auto free = normal_dims(Mode::planar, sig, {}, 3);
  CHECK(free.to_tsv() == "arity\tdim\ttag\n1\t1\texact\n2\t1\texact\n3\t2\texact\n");
}

TEST_CASE("stamp classes partition the normal monomials") {
  auto p = corpus("n-operad.shuffle");
  auto forbid = p.monomials();
  const int level = relation_level(forbid);
  CHECK(level == 2);
  for (int n = 2; n <= 5; ++n) {
    std::map<TreeMonomial, int> classes;
    auto ms = normal_monomials(p.mode, p.signature, forbid, n);
    for (const auto& m : ms) ++classes[stamp_of(m, level)];
    CHECK(classes.size() == 2);
    int total = 0;
    for (const auto& [s, c] : classes) total += c;
    CHECK(total == static_cast<int>(ms.size()));
    // mu-rooted and alpha-rooted monomials are equinumerous.
    CHECK(classes.begin()->second == classes.rbegin()->second);
  }
}
