#include <gtest/gtest.h>

#include <fstream>

#include "support/harness.hpp"

using namespace repspace;
using namespace harness;
using t2vm::Opcode;

TEST(Encoding, RoundTrip) {
  std::mt19937_64 g(3);
  for (int i = 0; i < 500; ++i) {
    auto p = random_program(g);
    EXPECT_EQ(t2vm::decode(t2vm::encode(p)), p);
  }
}

TEST(Encoding, BitExactSample) {
  // 1 | 0000 | 0011 | 001  then  1 | 1000 | 0011  then 0
  t2vm::Program p{{Opcode::Const, 3, 0, 2}, {Opcode::Write, 3, 0, 0}};
  EXPECT_EQ(bits_to_string(t2vm::encode(p)), "100000011001" "110000011" "0");
}

TEST(Encoding, DecodeIsTotal) {
  std::mt19937_64 g(4);
  for (int i = 0; i < 2000; ++i) {
    Bits b = random_bits(g, 0, 80);
    auto p = t2vm::decode(b);
    if (!p.empty()) {
      EXPECT_EQ(t2vm::decode(t2vm::encode(p)), p);
    }
  }
  EXPECT_TRUE(t2vm::decode(bits_from_string("1")).empty());
  EXPECT_TRUE(t2vm::decode(bits_from_string("11111")).empty());  // opcode 15 is not an opcode
}

TEST(Assembly, LabelsCommentsAndRoundTrip) {
  auto p = t2vm::assemble(R"(
      ; count up, writing the low bit
      const r1 0
      const r2 1
  top: write r1      ; label on the same line
      add r1 r2
      jmp top
  )");
  ASSERT_EQ(p.size(), 5u);
  EXPECT_EQ(p[4].op, Opcode::Jmp);
  EXPECT_EQ(p[4].imm, 2u);
  EXPECT_EQ(t2vm::assemble(t2vm::disassemble(p)), p);
  EXPECT_EQ(bits_to_string(bits_of(t2vm::run_program(p, zeros(), zeros()), 6)), "010101");
}

TEST(Assembly, Errors) {
  EXPECT_THROW(t2vm::assemble("frob r1"), std::invalid_argument);
  EXPECT_THROW(t2vm::assemble("const r16 1"), std::invalid_argument);
  EXPECT_THROW(t2vm::assemble("add r1"), std::invalid_argument);
  EXPECT_THROW(t2vm::assemble("jmp nowhere"), std::invalid_argument);
  EXPECT_THROW(t2vm::assemble("const r1 -3"), std::invalid_argument);
}

TEST(Assembly, SampleProgramCopiesInput) {
  std::ifstream in(std::string(REPSPACE_SOURCE_DIR) + "/programs/identity.asm");
  ASSERT_TRUE(in);
  std::stringstream s;
  s << in.rdbuf();
  Name out = t2vm::run_program(t2vm::assemble(s.str()), zeros(), periodic("011"));
  EXPECT_EQ(bits_to_string(bits_of(out, 9)), "011011011");
}

TEST(Machine, TransducerMatchesHost) {
  std::mt19937_64 g(5);
  for (int i = 0; i < 100; ++i) {
    Transducer t = random_transducer(g);
    Name x = random_name(g), o = random_name(g);
    Name run = t2vm::run_program(t.program(), o, x);
    auto out = run.prefix(40, 100000);
    ASSERT_TRUE(out);
    for (std::size_t k = 0; k < 40; ++k) EXPECT_EQ((*out)[k], t.host(x, o, k));
  }
}

TEST(Machine, CostIsStepCount) {
  // Two setup steps, then three per output bit.
  auto p = t2vm::assemble("const r1 0\nconst r2 1\ntop: write r1\nadd r1 r2\njmp top");
  Name run = t2vm::run_program(p, zeros(), zeros());
  auto b0 = run.probe(0, 100);
  ASSERT_TRUE(b0);
  EXPECT_EQ(b0->cost, 3u);
  auto b4 = run.probe(4, 100);
  ASSERT_TRUE(b4);
  EXPECT_EQ(b4->cost, 15u);
  Name fresh = t2vm::run_program(p, zeros(), zeros());
  EXPECT_FALSE(fresh.probe(4, 14));
  EXPECT_TRUE(fresh.probe(4, 15));
}

TEST(Machine, HaltingLeavesOutputFinite) {
  auto p = t2vm::assemble("const r0 1\nwrite r0");
  Name run = t2vm::run_program(p, zeros(), zeros());
  EXPECT_TRUE(run.bit(0, 10));
  EXPECT_FALSE(run.bit(1, 1000000));
  auto ins = t2vm::instrument(run);
  ASSERT_TRUE(ins);
  EXPECT_TRUE(ins->fell_off);
}

TEST(Machine, OutputIsMonotoneInFuel) {
  std::mt19937_64 g(6);
  for (int i = 0; i < 300; ++i) {
    auto p = random_program(g);
    Name x = random_name(g), o = random_name(g);
    Bits lo = run_output(t2vm::run_program(p, o, x), 100, 32);
    Bits hi = run_output(t2vm::run_program(p, o, x), 1000, 32);
    ASSERT_LE(lo.size(), hi.size());
    EXPECT_TRUE(std::equal(lo.begin(), lo.end(), hi.begin()));
  }
}

TEST(Machine, ReadsAreRecorded) {
  Transducer t{2, 1, 0, true};
  Name run = t2vm::run_program(t.program(), zeros(), zeros());
  ASSERT_TRUE(run.prefix(5, 10000));
  auto ins = t2vm::instrument(run);
  ASSERT_TRUE(ins);
  ASSERT_GE(ins->writes.size(), 5u);
  EXPECT_EQ(ins->writes[4].input_read_max, std::optional<std::size_t>(9));
  EXPECT_EQ(ins->writes[4].oracle_read_max, std::optional<std::size_t>(8));
  EXPECT_FALSE(t2vm::instrument(zeros()));
}

TEST(MachineIndex, ProgramsAndBuiltins) {
  std::mt19937_64 g(8);
  for (int i = 0; i < 200; ++i) {
    auto p = random_program(g);
    auto idx = t2vm::MachineIndex::of_program(p);
    EXPECT_FALSE(idx.is_builtin());
    EXPECT_EQ(idx.program(), p);
  }
  auto b = t2vm::MachineIndex::builtin(17);
  EXPECT_TRUE(b.is_builtin());
  EXPECT_EQ(b.builtin_id(), std::optional<unsigned>(17));
}
