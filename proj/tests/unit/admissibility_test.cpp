#include <gtest/gtest.h>

#include "support/harness.hpp"

using namespace repspace;
using namespace harness;

TEST(Kappa, SierpinskiLeftInverse) {
  for (std::size_t k : {0u, 3u, 30u}) EXPECT_TRUE(confirmed(kappa_inv_sierp(kappa(sierp_top_at(k))), 100000)) << k;
  EXPECT_FALSE(confirmed(kappa_inv_sierp(kappa(sierp_bottom())), 100000));
  EXPECT_TRUE(confirmed(kappa_inv(kappa(sierp_top())), 1000));
}

TEST(Kappa, SaturationOfAPoint) {
  Point x = cantor_point(periodic("10"));
  EXPECT_TRUE(confirmed(eval(kappa(x), cantor_cylinder(0, true)), 1000));
  EXPECT_FALSE(confirmed(eval(kappa(x), cantor_cylinder(1, true)), 100000));
}

TEST(Kappa, SequencesOfSierpinskiRoundTrip) {
  for (unsigned mask : {0u, 0b1011u, 0b111111u}) {
    Point f{function_space(nat(), sierp()),
            fn::sequence([mask](std::size_t i) { return i < 6 && (mask >> i & 1u) ? sierp_top_at(2 * i).name : zeros(); })};
    Point back = kappa_inv(kappa(f));
    for (std::size_t n = 0; n < 8; ++n) EXPECT_EQ(confirmed(eval(back, nat_encode(n)), 100000), n < 6 && (mask >> n & 1u)) << mask << " " << n;
  }
}

TEST(Kappa, CantorHasNoRegisteredInverse) {
  EXPECT_THROW(kappa_inv(kappa(cantor_point(zeros()))), MissingCapability);
  EXPECT_THROW(kappa_inverse(real()), MissingCapability);
}

TEST(Reflect, FactorsThroughKappa) {
  std::mt19937_64 g(60);
  for (int t = 0; t < 12; ++t) {
    std::size_t i = g() % 6;
    bool b = g() & 1u;
    Point f{function_space(cantor(), sierp()), fn::cylinder(i, b)};
    Point x = cantor_point(random_name(g));
    EXPECT_EQ(confirmed(eval(reflect(f), kappa(x)), 100000), *x.name.bit(i, 0) == b);
  }
  EXPECT_THROW(reflect(identity_fn(cantor())), MissingCapability);
}
