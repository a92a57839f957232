#include <gtest/gtest.h>

#include "supertrop/bipotent.hpp"
#include "supertrop/sampling.hpp"

namespace supertrop {
namespace {

BipotentElem V(long n, long d = 1) { return BipotentElem::value(Rational(n, d)); }
const BipotentElem Z = BipotentElem::zero();

TEST(Bipotent, AddIsMax) {
  EXPECT_EQ(bp_add(V(3), V(5)), V(5));
  EXPECT_EQ(bp_add(Z, V(-2)), V(-2));
  EXPECT_EQ(bp_add(V(7, 2), V(7, 2)), V(7, 2));
}

TEST(Bipotent, MulAddsValues) {
  EXPECT_EQ(bp_mul(V(2), V(3)), V(5));
  EXPECT_EQ(bp_mul(Z, V(9)), Z);
  EXPECT_EQ(bp_mul(V(-1, 2), V(1, 2)), V(0));
  EXPECT_EQ(V(0), BipotentElem::unit());
}

TEST(Bipotent, Order) {
  EXPECT_TRUE(bp_leq(Z, V(-100)));
  EXPECT_TRUE(bp_leq(V(1), V(1)));
  EXPECT_FALSE(bp_leq(V(5), V(3)));
}

TEST(Bipotent, Inverse) {
  EXPECT_EQ(bp_inverse(V(3)), V(-3));
  EXPECT_EQ(bp_inverse(V(0)), V(0));
  EXPECT_THROW(bp_inverse(Z), domain_error);
}

TEST(Bipotent, RenderAndParse) {
  EXPECT_EQ(render(Z), "-inf");
  EXPECT_EQ(render(V(6, 4)), "3/2");
  EXPECT_EQ(render(V(-4, 2)), "-2");
  EXPECT_EQ(parse_bipotent("-inf"), Z);
  EXPECT_EQ(parse_bipotent("-6/4"), V(-3, 2));
  EXPECT_THROW(parse_bipotent("1/0"), parse_error);
  EXPECT_THROW(parse_bipotent("inf"), parse_error);
  EXPECT_THROW(parse_bipotent("2x"), parse_error);
}

TEST(Bipotent, RandomizedLaws) {
  auto rng = make_rng(11);
  for (int i = 0; i < 20000; ++i) {
    const auto x = random_bipotent(rng), y = random_bipotent(rng), z = random_bipotent(rng);
    const auto s = bp_add(x, y);
    ASSERT_TRUE(s == x || s == y);
    ASSERT_EQ(bp_add(bp_add(x, y), z), bp_add(x, bp_add(y, z)));
    ASSERT_EQ(bp_mul(bp_mul(x, y), z), bp_mul(x, bp_mul(y, z)));
    ASSERT_EQ(bp_mul(x, y), bp_mul(y, x));
    ASSERT_EQ(bp_mul(x, bp_add(y, z)), bp_add(bp_mul(x, y), bp_mul(x, z)));
    ASSERT_EQ(bp_add(x, Z), x);
    ASSERT_EQ(bp_mul(x, BipotentElem::unit()), x);
    ASSERT_EQ(bp_mul(x, Z), Z);
    ASSERT_TRUE(bp_leq(x, y) || bp_leq(y, x));
    if (bp_leq(x, y)) {
      ASSERT_TRUE(bp_leq(bp_mul(x, z), bp_mul(y, z)));
      ASSERT_TRUE(bp_leq(bp_add(x, z), bp_add(y, z)));
      if (bp_leq(y, x)) {
        ASSERT_EQ(x, y);
      }
      if (bp_leq(y, z)) {
        ASSERT_TRUE(bp_leq(x, z));
      }
    }
    ASSERT_EQ(parse_bipotent(render(x)), x);
  }
}

}  // namespace
}  // namespace supertrop
