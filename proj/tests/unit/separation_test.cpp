#include <gtest/gtest.h>

#include "support/harness.hpp"

using namespace repspace;
using namespace harness;

namespace {

/// q + sign 2^-(m+1) at index m: a valid name of q other than the constant one.
Name shifted(const mpq_class& q, int sign) {
  return real_source(
      [q, sign](std::size_t m, Fuel) -> std::optional<std::pair<mpq_class, Fuel>> {
        return std::pair{mpq_class(q + sign * two_pow_neg(static_cast<unsigned>(m + 1))), static_cast<Fuel>(m + 1)};
      },
      "shifted");
}

}  // namespace

TEST(Hausdorff, Reals) {
  std::mt19937_64 g(40);
  for (int t = 0; t < 200; ++t) {
    mpq_class a = random_rational(g), b = random_rational(g);
    bool differ = a != b;
    EXPECT_EQ(confirmed(neq(real_from_rational(a), real_from_rational(b)), 100000), differ) << a << " " << b;
    EXPECT_FALSE(confirmed(neq(Point{real(), shifted(a, 1)}, Point{real(), shifted(a, -1)}), 20000));
  }
  EXPECT_TRUE(confirmed(neq(real_from_rational(mpq_class(1, 3)), real_from_rational(mpq_class(1, 2))), 10000));
}

TEST(Hausdorff, CloseRealsNeedMoreFuel) {
  mpq_class a(1, 3), b = a + two_pow_neg(30);
  Point pa{real(), shifted(a, 1)}, pb{real(), shifted(b, -1)};
  EXPECT_FALSE(confirmed(neq(pa, pb), 20));
  EXPECT_TRUE(confirmed(neq(pa, pb), 1 << 14));
}

TEST(Hausdorff, CantorAndProducts) {
  Point x = cantor_point(periodic("0")), y = cantor_point(nat_literal(9));
  EXPECT_TRUE(confirmed(neq(x, y), 1000));
  EXPECT_FALSE(confirmed(neq(x, x), 100000));
  Point xy = make_product(x, y), yx = make_product(y, x);
  EXPECT_TRUE(confirmed(neq(xy, yx), 1000));
  EXPECT_FALSE(confirmed(neq(xy, xy), 100000));
}

TEST(Discrete, NaturalsDecide) {
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) {
      EXPECT_EQ(confirmed(eq(nat_encode(i), nat_encode(j)), 1000), i == j);
      EXPECT_EQ(confirmed(neq(nat_encode(i), nat_encode(j)), 1000), i != j);
    }
  EXPECT_THROW(eq(cantor_point(zeros()), cantor_point(zeros())), MissingCapability);
}

TEST(Separation, ClosedSingletonAndCompactToClosed) {
  Point x = cantor_point(periodic("01"));
  ClosedSet s = closed_singleton(x);
  EXPECT_TRUE(confirmed(member(cantor_point(periodic("1")), s), 1000));  // excluded
  EXPECT_FALSE(confirmed(member(x, s), 100000));

  CompactSet k = k_union(sat_singleton(x), sat_singleton(cantor_point(zeros())));
  ClosedSet kc = k_to_closed(k);
  EXPECT_TRUE(confirmed(member(cantor_point(ones()), kc), 10000));
  EXPECT_FALSE(confirmed(member(cantor_point(zeros()), kc), 100000));
}

TEST(Separation, OvertToOpenOnNaturals) {
  OvertSet a = v_union(closure_singleton(nat_encode(2)), closure_singleton(nat_encode(5)));
  OpenSet u = v_to_open(a);
  for (std::size_t n = 0; n < 8; ++n) EXPECT_EQ(confirmed(member(nat_encode(n), u), 10000), n == 2 || n == 5);
}

TEST(Separation, GraphOfAMachine) {
  std::mt19937_64 g(41);
  Transducer t{1, 1, 1, false};  // x -> not(shift x)
  Point f = make_program(t.program(), cantor(), cantor());
  ClosedSet gr = graph(f);
  for (int i = 0; i < 10; ++i) {
    Point x = cantor_point(random_name(g));
    Point fx = eval(f, x);
    EXPECT_FALSE(confirmed(member(make_product(x, fx), gr), 20000));
    Point other = cantor_point(prepend(Bits{!*fx.name.bit(0, 1000)}, shift(fx.name, 1)));
    EXPECT_TRUE(confirmed(member(make_product(x, other), gr), 20000));
  }
}

TEST(Separation, GraphInverseOnSierpinskiCodomain) {
  using namespace fn;
  auto space = product_space(cantor(), sierp());
  // Graph of the constant bottom: only (p, T) is excluded, the cut is {bottom}.
  ClosedSet bottom = make_closed(space, proj2());
  EXPECT_FALSE(confirmed(graph_inv(bottom, cantor_point(periodic("1"))), 100000));
  // Excluding everything over [p(0) = 1] leaves an empty cut there, which the
  // left inverse of kappa sends to top; over [p(0) = 0] the cut is all of S.
  ClosedSet split = make_closed(space, compose(cylinder(0, true), proj1()));
  EXPECT_TRUE(confirmed(graph_inv(split, cantor_point(periodic("1"))), 100000));
  EXPECT_FALSE(confirmed(graph_inv(split, cantor_point(periodic("0"))), 100000));
  EXPECT_THROW(graph_inv(make_closed(space, proj2()), nat_encode(0)), DescriptorMismatch);
}

TEST(Separation, ProperPreimage) {
  // f = projection to bit 0 as a point of Cantor; preimage of {1 0^omega} is [p(0) = 1]
  Shuffle sh;
  sh.perm = {0, 0, 0, 0};
  Point f = sh.point();  // p -> p0 p0 p0 p0 0 0 ...
  CompactSet k = sat_singleton(cantor_point(word_then_zeros("1111")));
  CompactSet pre = proper_preimage(f, k);
  EXPECT_TRUE(confirmed(contained_in(pre, cantor_cylinder(0, true)), 1 << 16));
  EXPECT_FALSE(confirmed(contained_in(pre, cantor_cylinder(1, true)), 1 << 16));
}
