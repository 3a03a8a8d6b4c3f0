#include <gtest/gtest.h>

#include "support/harness.hpp"

using namespace repspace;
using namespace harness;

namespace {

constexpr Fuel kFuel = 20000;

struct Finite {
  std::vector<unsigned> idx;
  OvertSet set;
};

Finite random_finite(std::mt19937_64& g) {
  Finite f{{}, empty_overt(cantor())};
  for (int i = 0, n = static_cast<int>(g() % 4); i < n; ++i) {
    unsigned w = static_cast<unsigned>(g() % 16);
    f.idx.push_back(w);
    f.set = v_union(f.set, closure_singleton(cantor_point(point_with_prefix(w, g))));
  }
  return f;
}

}  // namespace

TEST(OvertSets, FinitePointSetsAgainstOracle) {
  std::mt19937_64 g(30);
  for (int t = 0; t < 20; ++t) {
    Finite a = random_finite(g);
    Table tu = random_table(g, 0.4), tv = random_table(g);
    OpenSet u = open_of(tu), v = open_of(tv);
    auto any = [&](auto p) { return std::any_of(a.idx.begin(), a.idx.end(), p); };
    EXPECT_EQ(confirmed(intersects(a.set, u), kFuel), any([&](unsigned w) { return tu[w]; }));
    EXPECT_EQ(confirmed(intersects(v_intersect_open(a.set, v), u), kFuel), any([&](unsigned w) { return tu[w] && tv[w]; }));
    Shuffle sh = random_shuffle(g);
    EXPECT_EQ(confirmed(intersects(v_image(sh.point(), a.set), u), kFuel), any([&](unsigned w) { return tu[sh.host(w)]; }));
  }
}

TEST(OvertSets, WholeCantorSpaceViaDenseSequence) {
  std::mt19937_64 g(31);
  for (int t = 0; t < 20; ++t) {
    Table tu = random_table(g, 0.1);
    bool nonempty = std::any_of(tu.begin(), tu.end(), [](bool b) { return b; });
    EXPECT_EQ(confirmed(intersects(whole_overt(cantor()), open_of(tu)), kFuel), nonempty);
  }
  // the dense sequence enumerates every finite word
  std::set<Bits> seen;
  for (std::size_t i = 0; i < 31; ++i) {
    Name p = eval(cantor_dense_sequence(), nat_encode(i)).name;
    auto pre = p.prefix(4, 1000);
    ASSERT_TRUE(pre);
    seen.insert(*pre);
  }
  EXPECT_EQ(seen.size(), 16u);
}

TEST(OvertSets, ClosureOfOpen) {
  OpenSet v = cantor_cylinder(0, true);
  EXPECT_TRUE(confirmed(intersects(closure_of_open(v), cantor_cylinder(1, false)), kFuel));
  EXPECT_FALSE(confirmed(intersects(closure_of_open(v), cantor_cylinder(0, false)), kFuel));
}

TEST(OvertSets, ExistsAndProjection) {
  // R = [x(0) = 1] x [y(0) = 1]; exists x in A with (x, y) in R iff A meets [x(0) = 1] and y(0) = 1
  OpenSet r = open_product(cantor_cylinder(0, true), cantor_cylinder(0, true));
  OvertSet a = closure_singleton(cantor_point(periodic("1")));
  OpenSet e = exists_rel(r, a);
  EXPECT_TRUE(confirmed(member(cantor_point(periodic("10")), e), kFuel));
  EXPECT_FALSE(confirmed(member(cantor_point(periodic("01")), e), kFuel));
  OvertSet b = closure_singleton(cantor_point(zeros()));
  EXPECT_FALSE(confirmed(member(cantor_point(periodic("10")), exists_rel(r, b)), kFuel));

  Point xy = make_product(cantor_point(periodic("1")), cantor_point(zeros()));
  OvertSet pairs = closure_singleton(xy);
  EXPECT_TRUE(confirmed(intersects(v_project(pairs, 1), cantor_cylinder(0, true)), kFuel));
  EXPECT_FALSE(confirmed(intersects(v_project(pairs, 2), cantor_cylinder(0, true)), kFuel));
}

TEST(OvertSets, CountableUnionOfOvertSets) {
  // A_n = {0^n 1 0...}; the union meets [p(7) = 1].
  auto as = set_sequence(overt_space(cantor()), [](std::size_t n) { return closure_singleton(cantor_point(nat_literal(n))).name; });
  EXPECT_TRUE(confirmed(intersects(v_countable_union(as), cantor_cylinder(7, true)), 1 << 16));
  EXPECT_FALSE(confirmed(intersects(v_countable_union(as), make_open(cantor(), fn::empty_open())), 1 << 16));
}

TEST(OvertSets, EmptyAndMismatch) {
  EXPECT_FALSE(confirmed(intersects(empty_overt(cantor()), full_open(cantor())), kFuel));
  EXPECT_THROW(intersects(whole_overt(cantor()), empty_open(nat())), DescriptorMismatch);
  EXPECT_THROW(intersects(cantor_as_compact(), empty_open(cantor())), DescriptorMismatch);
  EXPECT_THROW(whole_overt(real()), MissingCapability);
}

TEST(OvertSets, NaturalsAreOvert) {
  OpenSet seven = make_open(nat(), fn::compose(fn::builtin(Builtin::NatEq), fn::fanout(fn::identity(), fn::const_fn(nat_literal(7)))));
  EXPECT_TRUE(confirmed(intersects(whole_overt(nat()), seven), kFuel));
}
