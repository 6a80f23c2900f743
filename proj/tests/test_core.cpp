#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "narylab/properties.hpp"

using namespace narylab;

TEST_CASE("tuple index is row-major with x1 most significant") {
  const TupleIndex idx(3, 3);
  CHECK(idx.count() == 27);
  const std::vector<Element> t{1, 0, 2};
  CHECK(idx.index(t) == 11);
  CHECK(idx.unindex(11) == t);
  CHECK(idx.stride(0) == 9);
  CHECK(idx.stride(2) == 1);
}

TEST_CASE("index and unindex are inverse") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const TupleIndex idx(m, n);
      std::vector<Element> t(n, 0);
      std::size_t k = 0;
      do {
        REQUIRE(idx.index(t) == k);
        REQUIRE(idx.unindex(k) == t);
        REQUIRE(oracle::tuple_of(k, m, n) == t);
        ++k;
      } while (idx.next(t));
      CHECK(k == idx.count());
    }
  }
}

TEST_CASE("construction validates length and range") {
  CHECK_THROWS_WITH_AS(fx::table(2, 2, {0, 0, 0}), "expected 4 values, got 3", Error);
  CHECK_THROWS_AS(fx::table(2, 2, {0, 0, 0, 2}), Error);
  CHECK_THROWS_AS(Chain(0), Error);
  CHECK_THROWS_AS(checked_power(2, 40), Error);
}

TEST_CASE("checked evaluation") {
  const auto min2 = fx::min_op(2, 2);
  CHECK(min2.values() == std::vector<Element>{0, 0, 0, 1});
  CHECK(min2.eval({1, 1}) == 1);
  CHECK_THROWS_AS((void)min2.eval({0, 1, 1}), Error);
  CHECK_THROWS_AS((void)min2.eval({0, 2}), Error);
  CHECK(fx::xor_op(3).values() == std::vector<Element>{0, 1, 1, 0, 1, 0, 0, 1});
}

TEST_CASE("dual reverses the chain and is an involution") {
  CHECK(dual(fx::min_op(3, 3)) == fx::max_op(3, 3));
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % 3;
    std::vector<Element> v(checked_power(m, n));
    for (auto& x : v) x = static_cast<Element>(rng() % m);
    const auto f = fx::table(m, n, v);
    REQUIRE(dual(dual(f)) == f);
    REQUIRE(dual(f).values() == oracle::dual(v, m, n));
  }
}

TEST_CASE("derive folds from the left and matches the reference fold") {
  CHECK(derive(fx::min_op(3, 2), 3) == fx::min_op(3, 3));
  CHECK(derive(fx::xor_op(2), 3) == fx::xor_op(3));
  CHECK(derive(fx::xor_op(2), 2) == fx::xor_op(2));
  oracle::each_table(2, 2, [](const oracle::Values& g) {
    const auto t = fx::table(2, 2, g);
    for (std::size_t n = 2; n <= 4; ++n) REQUIRE(fold_unchecked(t, n).values() == oracle::fold(g, 2, n));
  });
}

TEST_CASE("derive rejects non-associative input with a witness") {
  const auto g = fx::table(2, 2, {1, 0, 0, 0});  // nor
  try {
    (void)derive(g, 3);
    FAIL("expected NotAssociative");
  } catch (const NotAssociative& e) {
    CHECK(reproduces(g, e.witness()));
  }
}

TEST_CASE("derived operations are n-associative") {
  for (std::size_t m = 1; m <= 3; ++m) {
    oracle::each_table(m, 2, [m](const oracle::Values& g) {
      if (!oracle::associative(g, m, 2)) return;
      for (std::size_t n = 3; n <= 4; ++n) {
        if (m == 3 && n == 4) continue;
        const auto f = derive(fx::table(m, 2, g), n);
        REQUIRE(is_associative(f).holds());
        REQUIRE(oracle::associative(f.values(), m, n));
      }
    });
  }
}

TEST_CASE("generalized associativity: any bracketing of the n-fold agrees") {
  // G(F(x_1..x_n), x_{n+1}) must equal F(x_1, .., G(x_n, x_{n+1})) for associative G.
  oracle::each_table(3, 2, [](const oracle::Values& g) {
    if (!oracle::associative(g, 3, 2)) return;
    const auto gt = fx::table(3, 2, g);
    const auto f = derive(gt, 3);
    for (const auto& t : oracle::all_tuples(3, 4)) {
      const Element left = gt.eval({f.eval({t[0], t[1], t[2]}), t[3]});
      const Element right = f.eval({t[0], t[1], gt.eval({t[2], t[3]})});
      REQUIRE(left == right);
    }
  });
}

TEST_CASE("table ordering is by carrier, arity, then values") {
  CHECK(fx::table(2, 2, {0, 0, 0, 1}) < fx::table(2, 2, {0, 1, 1, 1}));
  CHECK(fx::table(2, 3, std::vector<Element>(8, 1)) < fx::table(3, 2, std::vector<Element>(9, 0)));
  CHECK(describe(fx::min_op(2, 2)) == "m=2 n=2 [0,0,0,1]");
}
