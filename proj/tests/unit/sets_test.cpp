#include <gtest/gtest.h>

#include "support/harness.hpp"

using namespace repspace;
using namespace harness;

namespace {

Point sierp_sequence(std::function<Name(std::size_t)> items) {
  return {function_space(nat(), sierp()), fn::sequence(std::move(items))};
}

constexpr Fuel kFuel = 20000;

}  // namespace

TEST(SierpinskiLogic, TruthTables) {
  const std::array<Point, 2> v{sierp_bottom(), sierp_top_at(4)};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      EXPECT_EQ(confirmed(sierp_and(v[a], v[b]), 1000), a && b) << a << b;
      EXPECT_EQ(confirmed(sierp_or(v[a], v[b]), 1000), a || b) << a << b;
    }
}

TEST(SierpinskiLogic, CountableOrFairnessBound) {
  std::mt19937_64 g(12);
  for (int t = 0; t < 40; ++t) {
    std::size_t i = g() % 30, k = g() % 30;
    auto xs = sierp_sequence([i, k](std::size_t n) { return n == i ? sierp_top_at(k).name : zeros(); });
    // Component i costs max(i + 1, k + 1) to confirm through the sequence.
    Fuel f = std::max(i, k) + 1;
    EXPECT_TRUE(confirmed(sierp_countable_or(xs), (i + 1) * (i + 1) * (f + 1))) << i << " " << k;
  }
  EXPECT_FALSE(confirmed(sierp_countable_or(sierp_sequence([](std::size_t) { return zeros(); })), 200000));
}

TEST(SierpinskiLogic, CountableOrIsMonotone) {
  auto xs = sierp_sequence([](std::size_t n) { return n == 5 ? sierp_top_at(20).name : zeros(); });
  Point s = sierp_countable_or(xs);
  bool seen = false;
  for (Fuel f = 1; f < 2000; f += 7) {
    bool c = confirmed(s, f);
    EXPECT_TRUE(!seen || c) << f;
    seen = seen || c;
  }
  EXPECT_TRUE(seen);
}

TEST(OpenSets, CylindersAgainstBits) {
  std::mt19937_64 g(13);
  for (int t = 0; t < 100; ++t) {
    std::size_t i = g() % 12;
    bool b = g() & 1u;
    Name p = random_name(g);
    EXPECT_EQ(confirmed(member(cantor_point(p), cantor_cylinder(i, b)), 1000), *p.bit(i, 0) == b);
  }
}

TEST(OpenSets, TruthTableAlgebra) {
  std::mt19937_64 g(14);
  for (int inst = 0; inst < 3; ++inst) {
    Table ta = random_table(g), tb = random_table(g);
    OpenSet u = open_of(ta), v = open_of(tb);
    for (unsigned w = 0; w < 16; ++w) {
      Point x = cantor_point(point_with_prefix(w, g));
      EXPECT_EQ(confirmed(member(x, u), kFuel), ta[w]);
      EXPECT_EQ(confirmed(member(x, set_union(u, v)), kFuel), ta[w] || tb[w]);
      EXPECT_EQ(confirmed(member(x, set_intersection(u, v)), kFuel), ta[w] && tb[w]);
      // closed sets: confirmation means exclusion
      EXPECT_EQ(confirmed(member(x, set_union(complement(u), complement(v))), kFuel), ta[w] && tb[w]);
      EXPECT_EQ(confirmed(member(x, set_intersection(complement(u), complement(v))), kFuel), ta[w] || tb[w]);
    }
  }
}

TEST(OpenSets, ComplementIsADescriptorFlip) {
  OpenSet u = cantor_cylinder(2, true);
  ClosedSet a = complement(u);
  EXPECT_TRUE(is_closed(a));
  EXPECT_EQ(a.name.get(), u.name.get());
  EXPECT_EQ(complement(a).space->kind, Kind::Open);
  EXPECT_THROW(complement(cantor_point(zeros())), DescriptorMismatch);
  EXPECT_THROW(set_union(u, a), DescriptorMismatch);
  EXPECT_THROW(set_union(u, empty_open(nat())), DescriptorMismatch);
}

TEST(OpenSets, EmptyAndFull) {
  Point x = cantor_point(periodic("1"));
  EXPECT_TRUE(confirmed(member(x, full_open(cantor())), 10));
  EXPECT_FALSE(confirmed(member(x, empty_open(cantor())), 100000));
  // closed: confirmation means exclusion
  EXPECT_TRUE(confirmed(member(x, empty_closed(cantor())), 10));
  EXPECT_FALSE(confirmed(member(x, full_closed(cantor())), 100000));
}

TEST(OpenSets, CountableUnionAndIntersection) {
  // U_n = [p(n) = 1]; the union misses only 0^omega.
  auto us = set_sequence(open_space(cantor()), [](std::size_t n) { return fn::cylinder(n, true); });
  OpenSet u = countable_union(us);
  EXPECT_TRUE(confirmed(member(cantor_point(nat_literal(6)), u), kFuel));
  EXPECT_FALSE(confirmed(member(cantor_point(zeros()), u), kFuel));
  auto as = set_sequence(closed_space(cantor()), [](std::size_t n) { return fn::cylinder(n, true); });
  ClosedSet a = countable_intersection(as);  // {0^omega}
  EXPECT_TRUE(confirmed(member(cantor_point(nat_literal(3)), a), kFuel));
  EXPECT_FALSE(confirmed(member(cantor_point(zeros()), a), kFuel));
  EXPECT_THROW(countable_union(as), DescriptorMismatch);
}

TEST(OpenSets, PreimageUnderMachines) {
  std::mt19937_64 g(15);
  for (int t = 0; t < 5; ++t) {
    Shuffle sh = random_shuffle(g);
    Table ta = random_table(g);
    OpenSet u = open_of(ta);
    OpenSet pre = preimage(sh.point(), u);
    for (unsigned w = 0; w < 16; ++w)
      EXPECT_EQ(confirmed(member(cantor_point(point_with_prefix(w, g)), pre), kFuel), ta[sh.host(w)]);
  }
}

TEST(OpenSets, ProductsAndCuts) {
  std::mt19937_64 g(16);
  Table ta = random_table(g), tb = random_table(g);
  OpenSet u = open_of(ta), v = open_of(tb);
  OpenSet uv = open_product(u, v);
  ClosedSet ab = closed_product(complement(u), complement(v));
  for (unsigned w = 0; w < 16; ++w) {
    unsigned w2 = static_cast<unsigned>(g() % 16);
    Point x = cantor_point(point_with_prefix(w, g)), y = cantor_point(point_with_prefix(w2, g));
    EXPECT_EQ(confirmed(member(make_product(x, y), uv), kFuel), ta[w] && tb[w2]);
    EXPECT_EQ(confirmed(member(make_product(x, y), ab), kFuel), ta[w] || tb[w2]);
    EXPECT_EQ(confirmed(member(x, cut(y, uv)), kFuel), ta[w] && tb[w2]);
  }
}

TEST(OpenSets, SequenceProduct) {
  auto as = set_sequence(closed_space(cantor()), [](std::size_t n) { return n == 2 ? fn::cylinder(0, true) : fn::empty_open(); });
  ClosedSet prod = seq_closed_product(as);
  auto seq = [](Name third) {
    return Point{function_space(nat(), cantor()), fn::sequence([third](std::size_t i) { return i == 2 ? third : zeros(); })};
  };
  EXPECT_TRUE(confirmed(member(seq(ones()), prod), kFuel));
  EXPECT_FALSE(confirmed(member(seq(zeros()), prod), kFuel));
}

TEST(OpenSets, OnNaturals) {
  OpenSet four = make_open(nat(), fn::compose(fn::builtin(Builtin::NatEq),
                                               fn::fanout(fn::identity(), fn::const_fn(nat_literal(4)))));
  EXPECT_TRUE(confirmed(member(nat_encode(4), four), 1000));
  EXPECT_FALSE(confirmed(member(nat_encode(5), four), 1000));
}
