#include <gtest/gtest.h>

#include "support/harness.hpp"

using namespace repspace;
using namespace harness;

namespace {

constexpr std::size_t kBits = 32;
constexpr Fuel kFuel = 100000;

void expect_same(const Name& a, const Name& b) {
  auto e = prefix_equal(a, b, kBits, kFuel);
  ASSERT_TRUE(e);
  EXPECT_TRUE(*e);
}

}  // namespace

TEST(Descriptors, SetSpacesNormalizeToFunctionSpaces) {
  auto C = cantor();
  EXPECT_TRUE(same_space(open_space(C), function_space(C, sierp())));
  EXPECT_TRUE(same_space(closed_space(C), open_space(C)));
  EXPECT_TRUE(same_space(compact_space(C), function_space(open_space(C), sierp())));
  EXPECT_TRUE(same_space(unit_interval_space(), real()));
  EXPECT_FALSE(same_space(C, nat()));
  EXPECT_FALSE(same_space(product_space(C, nat()), product_space(nat(), C)));
  EXPECT_EQ(to_string(function_space(product_space(C, nat()), open_space(real()))), "C((Cantor x N), O(R))");
}

TEST(Descriptors, CapabilitiesFollowConstructions) {
  auto C = cantor();
  EXPECT_TRUE(product_space(C, C)->caps.compact);
  EXPECT_TRUE(product_space(C, C)->caps.t2);
  EXPECT_FALSE(product_space(C, nat())->caps.compact);
  EXPECT_TRUE(product_space(C, nat())->caps.overt);
  EXPECT_TRUE(function_space(nat(), sierp())->caps.admissible);
  EXPECT_FALSE(function_space(nat(), C)->caps.admissible);
  EXPECT_FALSE(real()->caps.discrete);
}

TEST(Descriptors, MismatchesThrow) {
  Point x = cantor_point(zeros());
  Point f = identity_fn(nat());
  EXPECT_THROW(eval(f, x), DescriptorMismatch);
  EXPECT_THROW(compose(identity_fn(cantor()), f), DescriptorMismatch);
  EXPECT_THROW(curry(f), DescriptorMismatch);
  EXPECT_THROW(eval(x, x), DescriptorMismatch);
  EXPECT_THROW(eq(x, x), MissingCapability);
}

TEST(Naturals, EncodeDecode) {
  for (std::size_t n : {0u, 1u, 7u, 63u}) {
    EXPECT_EQ(nat_decode(nat_encode(n), n + 1), std::optional<std::size_t>(n));
    EXPECT_FALSE(nat_decode(nat_encode(n), n));
  }
}

TEST(Sierpinski, TopAtK) {
  for (std::size_t k : {0u, 3u, 40u}) {
    EXPECT_EQ(sierp_observe(sierp_top_at(k), k + 1), SierpObservation::Confirmed);
    EXPECT_EQ(sierp_observe(sierp_top_at(k), k), SierpObservation::Unknown);
  }
  EXPECT_EQ(sierp_observe(sierp_bottom(), 1000000), SierpObservation::Unknown);
  EXPECT_STREQ(to_string(SierpObservation::Confirmed), "Confirmed");
}

TEST(Combinators, ProjectionsAndProducts) {
  std::mt19937_64 g(10);
  for (int i = 0; i < 20; ++i) {
    Point x = cantor_point(random_name(g)), y = cantor_point(random_name(g));
    Point xy = make_product(x, y);
    expect_same(proj1(xy).name, x.name);
    expect_same(proj2(xy).name, y.name);
    expect_same(eval(identity_fn(cantor()), x).name, x.name);
    expect_same(apply(fn::swap(), xy.name), pair(y.name, x.name));
    expect_same(apply(fn::diagonal(), x.name), pair(x.name, x.name));
  }
}

TEST(Combinators, DefiningEquationsOnMachines) {
  std::mt19937_64 g(11);
  auto C = cantor();
  auto CC = product_space(C, C);
  for (int i = 0; i < 10; ++i) {
    Transducer tf = random_transducer(g), tg = random_transducer(g);
    Name of = random_name(g), og = random_name(g);
    Point f = make_program(tf.program(), CC, C, of), gp = make_program(tg.program(), C, C, og);
    Point x = cantor_point(random_name(g)), y = cantor_point(random_name(g)), xy = make_product(x, y);
    expect_same(eval(eval(curry(f), x), y).name, eval(f, xy).name);
    expect_same(eval(uncurry(curry(f)), xy).name, eval(f, xy).name);
    expect_same(eval(compose(gp, f), xy).name, eval(gp, eval(f, xy)).name);
    expect_same(eval(partial(x, f), y).name, eval(f, xy).name);
    expect_same(eval(const_fn(C, y), x).name, y.name);
  }
}

TEST(Combinators, UniversalApplicationReadsRawNames) {
  // 0^16 1 0^omega names builtin 8, the identity, with an all-zero oracle.
  Name raw = parse_name_literal("nat 16");
  EXPECT_FALSE(raw.as<FunctionName>());
  Name x = periodic("0110");
  Name out = apply(raw, x);
  EXPECT_FALSE(out.probe(0, 16));  // finding the index costs 17
  expect_same(out, x);
  auto parsed = parse_function_name(raw, 100);
  ASSERT_TRUE(parsed);
  EXPECT_EQ(parsed->first.builtin_id(), std::optional<unsigned>(8));
}

TEST(Combinators, ProgramIndicesRoundTrip) {
  Transducer t{1, 2, 1, false};
  auto idx = t2vm::MachineIndex::of_program(t.program());
  EXPECT_FALSE(idx.is_builtin());
  EXPECT_EQ(t2vm::MachineIndex::of_program(idx.program()), idx);
  // Odd raw indices name programs too: 0^5 1 is index 5, the program decoded from "1".
  auto parsed = parse_function_name(parse_name_literal("nat 5"), 100);
  ASSERT_TRUE(parsed);
  EXPECT_FALSE(parsed->first.is_builtin());
  EXPECT_EQ(bits_to_string(parsed->first.program_bits()), "1");
}

TEST(Coproducts, CaseSplitAndCopair) {
  auto C = cantor();
  Point l = inject1(cantor_point(periodic("01")), nat());
  Point r = inject2(C, nat_encode(3));
  auto sl = case_split(l, 0);
  ASSERT_TRUE(sl);
  EXPECT_EQ(sl->first, 0u);
  expect_same(sl->second.name, periodic("01"));
  auto sr = case_split(r, 0);
  ASSERT_TRUE(sr);
  EXPECT_EQ(sr->first, 1u);
  EXPECT_EQ(nat_decode(sr->second, 10), std::optional<std::size_t>(3));

  Point f = const_fn(C, cantor_point(ones()));
  Point g = const_fn(nat(), cantor_point(zeros()));
  Point h = copair(f, g);
  expect_same(eval(h, l).name, ones());
  expect_same(eval(h, r).name, zeros());
}

TEST(Combinators, FunctionLiterals) {
  Name x = periodic("01");
  auto run = [&](const char* lit) {
    auto pre = apply(parse_fn_literal(lit), x).prefix(8, Fuel{1} << 30);
    return pre ? bits_to_string(*pre) : std::string("?");
  };
  EXPECT_EQ(run("identity"), "01010101");
  EXPECT_EQ(run("swap"), "10101010");
  EXPECT_EQ(run("compose(proj1, diagonal)"), "01010101");
  EXPECT_EQ(run("const(word \"11\" then zeros)"), "11000000");
  EXPECT_EQ(run("asm(\"const r0 1 | top: write r0 | jmp top\")"), "11111111");
  EXPECT_EQ(run("word \"00000000000000001\" then zeros"), "01010101");  // raw name of builtin 8
  for (const char* bad : {"", "ident", "compose(identity)", "cylinder(1,2)", "identity extra", "const(\"0\")"})
    EXPECT_THROW(parse_fn_literal(bad), std::invalid_argument) << bad;
}
