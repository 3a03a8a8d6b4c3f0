#include <gtest/gtest.h>

#include "support/harness.hpp"

using namespace repspace;
using namespace harness;

namespace {

constexpr Fuel kFuel = 20000;

Point shifted_cylinders() {
  return set_sequence(open_space(cantor()),
                      [](std::size_t n) { return n == 0 ? fn::cylinder(5, false) : fn::cylinder(n - 1, true); });
}

/// Brute force over depth-4 words: does the table hold everywhere?
bool all_true(const Table& t) { return std::all_of(t.begin(), t.end(), [](bool b) { return b; }); }

}  // namespace

TEST(CantorSearch, CaseSplitAtDepthOne) {
  auto r = search_is_full(cantor_tree(), set_union(cantor_cylinder(0, false), cantor_cylinder(0, true)), 1000);
  EXPECT_TRUE(r.confirmed);
  EXPECT_EQ(r.depth, 1u);
}

TEST(CantorSearch, TablesAgainstBruteForce) {
  std::mt19937_64 g(20);
  for (int t = 0; t < 30; ++t) {
    Table tab = random_table(g, t % 2 ? 0.9 : 0.99);
    if (t % 5 == 0) tab.fill(true);
    auto r = search_is_full(cantor_tree(), open_of(tab), kFuel);
    EXPECT_EQ(r.confirmed, all_true(tab));
    if (r.confirmed) {
      EXPECT_LE(r.depth, 4u);
    }
    EXPECT_EQ(confirmed(is_full(open_of(tab), cantor_as_compact()), kFuel), all_true(tab));
  }
}

TEST(CantorSearch, PuncturedSpaceStaysUnknown) {
  OpenSet punctured = make_open(cantor(), fn::identity());  // some bit is 1
  auto r = search_is_full(cantor_tree(), punctured, 1000000);
  EXPECT_FALSE(r.confirmed);
  EXPECT_LE(r.nodes, 2 * kDefaultFrontierCap + 64);
}

TEST(CantorSearch, ClosedEmptiness) {
  ClosedSet none = complement(set_union(cantor_cylinder(3, false), cantor_cylinder(3, true)));
  EXPECT_TRUE(confirmed(is_empty_closed_cantor(none), kFuel));
  ClosedSet one = complement(cantor_cylinder(3, true));
  EXPECT_FALSE(confirmed(is_empty_closed_cantor(one), kFuel));
}

TEST(FiniteSubcover, ShiftedCylinders) {
  auto sub = finite_subcover(shifted_cylinders(), cantor_as_compact(), Fuel{1} << 20);
  ASSERT_TRUE(sub);
  EXPECT_EQ(sub->n, 6u);  // W_0 u ... u W_6 covers; W_0..W_5 misses 0^5 1 ...
  EXPECT_GE(sub->traced, sub->n);
  EXPECT_TRUE(sub->validated);
  Point trunc{shifted_cylinders().space, fn::truncate(shifted_cylinders().name, 5)};
  EXPECT_FALSE(confirmed(is_cover(trunc, cantor_as_compact()), Fuel{1} << 20));
}

TEST(FiniteSubcover, NoCover) {
  auto us = set_sequence(open_space(cantor()), [](std::size_t n) { return fn::cylinder(n, true); });
  EXPECT_FALSE(finite_subcover(us, cantor_as_compact(), 4096));
  EXPECT_THROW(finite_subcover(cantor_dense_sequence(), cantor_as_compact(), 10), DescriptorMismatch);
}

TEST(CompactSets, FinitePointSetsAgainstOracle) {
  std::mt19937_64 g(21);
  auto C = cantor();
  for (int t = 0; t < 20; ++t) {
    std::vector<unsigned> idx;
    CompactSet k = empty_compact(C);
    for (int i = 0, n = 1 + static_cast<int>(g() % 3); i < n; ++i) {
      unsigned w = static_cast<unsigned>(g() % 16);
      idx.push_back(w);
      k = k_union(k, sat_singleton(cantor_point(point_with_prefix(w, g))));
    }
    Table tu = random_table(g, 0.7), tv = random_table(g);
    OpenSet u = open_of(tu);
    auto all = [&](auto p) { return std::all_of(idx.begin(), idx.end(), p); };
    EXPECT_EQ(confirmed(contained_in(k, u), kFuel), all([&](unsigned w) { return tu[w]; }));
    EXPECT_EQ(confirmed(contained_in(k_intersect_closed(k, complement(open_of(tv))), u), kFuel),
              all([&](unsigned w) { return tu[w] || tv[w]; }));
    Shuffle sh = random_shuffle(g);
    EXPECT_EQ(confirmed(contained_in(k_image(sh.point(), k), u), kFuel), all([&](unsigned w) { return tu[sh.host(w)]; }));
    EXPECT_EQ(confirmed(contained_in(k_project(k_product(k, cantor_as_compact()), 1), u), kFuel),
              all([&](unsigned w) { return tu[w]; }));
  }
  EXPECT_TRUE(confirmed(contained_in(empty_compact(C), empty_open(C)), 10));
}

TEST(CompactSets, ForallOverCantor) {
  // {y | for all x, (x, y) in [x(0) = 0] u [y(1) = 1]} = [y(1) = 1]
  OpenSet r = set_union(open_product(cantor_cylinder(0, false), full_open(cantor())),
                        open_product(full_open(cantor()), cantor_cylinder(1, true)));
  OpenSet all = forall_rel(r, cantor_as_compact());
  EXPECT_TRUE(confirmed(member(cantor_point(periodic("01")), all), kFuel));
  EXPECT_FALSE(confirmed(member(cantor_point(periodic("10")), all), kFuel));
}

TEST(CompactSets, Mismatches) {
  EXPECT_THROW(contained_in(cantor_as_compact(), empty_open(nat())), DescriptorMismatch);
  EXPECT_THROW(contained_in(cantor_point(zeros()), empty_open(cantor())), DescriptorMismatch);
  EXPECT_THROW(whole_compact(nat()), MissingCapability);
  EXPECT_THROW(k_project(cantor_as_compact(), 1), DescriptorMismatch);
}

TEST(UnitInterval, CoversAndNonCovers) {
  auto [ku, vu] = unit_interval();
  OpenSet two = set_union(real_interval(mpq_class(-1, 4), mpq_class(17, 32)), real_interval(mpq_class(15, 32), mpq_class(5, 4)));
  EXPECT_TRUE(confirmed(contained_in(ku, two), 1 << 18));
  // misses [1/2, 17/32]
  OpenSet gap = set_union(real_interval(mpq_class(-1, 4), mpq_class(1, 2)), real_interval(mpq_class(17, 32), mpq_class(5, 4)));
  EXPECT_FALSE(confirmed(contained_in(ku, gap), 1 << 18));
  EXPECT_TRUE(confirmed(contained_in(ku, real_below(mpq_class(9, 8))), 1 << 16));
  EXPECT_FALSE(confirmed(contained_in(ku, real_below(1)), 1 << 18));  // 1 is in [0,1]
}

TEST(UnitInterval, TreeNodesAreNestedDyadicIntervals) {
  auto tree = unit_interval_tree();
  auto roots = tree.roots();
  ASSERT_EQ(roots.size(), 1u);
  auto kids = tree.children(roots[0]);
  ASSERT_EQ(kids.size(), 2u);
  // Block m of every node's word is the centre of its depth-(m+1) ancestor.
  for (const auto& kid : kids) {
    Name w = partial_word(kid.word);
    auto q0 = real_approx(w, 0, 1000), q1 = real_approx(w, 1, 1000);
    ASSERT_TRUE(q0 && q1);
    EXPECT_EQ(*q0, mpq_class(1, 2));
    EXPECT_EQ(*q1, mpq_class(2 * kid.k + 1, 4));
  }
}
