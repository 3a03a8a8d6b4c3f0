#ifndef REPSPACE_T2VM_HPP
#define REPSPACE_T2VM_HPP

// A small register machine with oracle and input streams. Output is a
// monotone bit buffer; each written bit remembers the least fuel under which
// the run reaches it, which makes the machine's output an ordinary Name.

#include <array>
#include <charconv>
#include <map>
#include <sstream>

#include <gmpxx.h>

#include "names.hpp"

namespace repspace::t2vm {

inline constexpr std::size_t kRegisterCount = 16;

enum class Opcode : std::uint8_t {
  Const = 0,   // CONST r k      r <- k
  Move,        // MOVE r s       r <- s
  Add,         // ADD r s        r <- r + s (saturating)
  SubSat,      // SUBSAT r s     r <- max(r - s, 0)
  Jz,          // JZ r t         if r == 0 goto t
  Jmp,         // JMP t          goto t
  ReadOracle,  // READORACLE r p r <- oracle bit at position p
  ReadInput,   // READINPUT r p  r <- input bit at position p
  Write,       // WRITE r        emit r mod 2
};
inline constexpr unsigned kOpcodeCount = 9;
inline constexpr unsigned kOpcodeBits = 4;
inline constexpr unsigned kRegisterBits = 4;

struct Instruction {
  Opcode op = Opcode::Jmp;
  std::uint8_t a = 0;
  std::uint8_t b = 0;
  std::uint64_t imm = 0;

  bool operator==(const Instruction&) const = default;
};

using Program = std::vector<Instruction>;

inline const char* mnemonic(Opcode op) {
  static constexpr const char* kNames[] = {"CONST", "MOVE", "ADD", "SUBSAT", "JZ",
                                           "JMP", "READORACLE", "READINPUT", "WRITE"};
  return kNames[static_cast<unsigned>(op)];
}

// ---------------------------------------------------------------------------
// Wire format. A program is a sequence of `1 <instruction>` records closed by
// a single 0. An instruction is a 4-bit opcode (MSB first) followed by its
// operands: registers as 4-bit fields, immediates as unary blocks 0^k 1.
// Decoding is total: anything malformed decodes to the empty program.

namespace detail {

enum class Operand { Reg, Imm };

inline std::vector<Operand> operands(Opcode op) {
  using enum Operand;
  switch (op) {
    case Opcode::Const: return {Reg, Imm};
    case Opcode::Jz: return {Reg, Imm};
    case Opcode::Jmp: return {Imm};
    case Opcode::Write: return {Reg};
    default: return {Reg, Reg};
  }
}

inline void put_fixed(Bits& out, unsigned value, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back(((value >> i) & 1u) != 0);
}

inline void put_unary(Bits& out, std::uint64_t k) {
  out.insert(out.end(), k, false);
  out.push_back(true);
}

}  // namespace detail

inline Bits encode(const Program& prog) {
  Bits out;
  for (const auto& ins : prog) {
    out.push_back(true);
    detail::put_fixed(out, static_cast<unsigned>(ins.op), kOpcodeBits);
    bool first_reg = true;
    for (auto kind : detail::operands(ins.op)) {
      if (kind == detail::Operand::Reg) {
        detail::put_fixed(out, first_reg ? ins.a : ins.b, kRegisterBits);
        first_reg = false;
      } else {
        detail::put_unary(out, ins.imm);
      }
    }
  }
  out.push_back(false);
  return out;
}

inline Program decode(const Bits& bits) {
  Program prog;
  std::size_t pos = 0;
  auto take = [&](unsigned width) -> std::optional<unsigned> {
    if (pos + width > bits.size()) return std::nullopt;
    unsigned v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bits[pos++] ? 1u : 0u);
    return v;
  };
  auto take_unary = [&]() -> std::optional<std::uint64_t> {
    std::uint64_t k = 0;
    while (pos < bits.size() && !bits[pos]) {
      ++k;
      ++pos;
    }
    if (pos >= bits.size()) return std::nullopt;
    ++pos;
    return k;
  };
  for (;;) {
    if (pos >= bits.size()) return {};
    if (!bits[pos++]) return prog;
    auto code = take(kOpcodeBits);
    if (!code || *code >= kOpcodeCount) return {};
    Instruction ins;
    ins.op = static_cast<Opcode>(*code);
    bool first_reg = true;
    for (auto kind : detail::operands(ins.op)) {
      if (kind == detail::Operand::Reg) {
        auto r = take(kRegisterBits);
        if (!r) return {};
        (first_reg ? ins.a : ins.b) = static_cast<std::uint8_t>(*r);
        first_reg = false;
      } else {
        auto k = take_unary();
        if (!k) return {};
        ins.imm = *k;
      }
    }
    prog.push_back(ins);
  }
}

// ---------------------------------------------------------------------------
// Assembly text: one instruction per line, `;` starts a comment, registers are
// written r0..r15, jump targets are instruction indices or `label:` names.

inline Program assemble(std::string_view text) {
  struct Line {
    std::vector<std::string> tokens;
    std::size_t number;
  };
  std::vector<Line> lines;
  std::map<std::string, std::uint64_t> labels;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto c = raw.find(';'); c != std::string::npos) raw.erase(c);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    while (!toks.empty() && toks.front().back() == ':') {
      labels[toks.front().substr(0, toks.front().size() - 1)] = lines.size();
      toks.erase(toks.begin());
    }
    if (!toks.empty()) lines.push_back({std::move(toks), number});
  }

  auto fail = [](std::size_t line, const std::string& msg) {
    return std::invalid_argument("line " + std::to_string(line) + ": " + msg);
  };
  auto parse_uint = [&](const std::string& s, std::size_t line) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw fail(line, "bad number `" + s + "`");
    return v;
  };
  auto parse_reg = [&](const std::string& s, std::size_t line) {
    if (s.size() < 2 || (s[0] != 'r' && s[0] != 'R')) throw fail(line, "expected register, got `" + s + "`");
    auto v = parse_uint(s.substr(1), line);
    if (v >= kRegisterCount) throw fail(line, "register out of range: " + s);
    return static_cast<std::uint8_t>(v);
  };
  auto parse_target = [&](const std::string& s, std::size_t line) -> std::uint64_t {
    if (auto it = labels.find(s); it != labels.end()) return it->second;
    return parse_uint(s, line);
  };

  Program prog;
  for (const auto& [toks, line] : lines) {
    std::string op = toks[0];
    for (auto& ch : op) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    std::optional<Opcode> code;
    for (unsigned i = 0; i < kOpcodeCount; ++i)
      if (op == mnemonic(static_cast<Opcode>(i))) code = static_cast<Opcode>(i);
    if (!code) throw fail(line, "unknown mnemonic `" + toks[0] + "`");
    auto kinds = detail::operands(*code);
    if (toks.size() != kinds.size() + 1) throw fail(line, "wrong operand count for " + op);
    Instruction ins;
    ins.op = *code;
    bool first_reg = true;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      if (kinds[i] == detail::Operand::Reg) {
        (first_reg ? ins.a : ins.b) = parse_reg(toks[i + 1], line);
        first_reg = false;
      } else {
        ins.imm = (*code == Opcode::Const) ? parse_uint(toks[i + 1], line) : parse_target(toks[i + 1], line);
      }
    }
    prog.push_back(ins);
  }
  return prog;
}

inline std::string disassemble(const Program& prog) {
  std::ostringstream out;
  for (const auto& ins : prog) {
    out << mnemonic(ins.op);
    bool first_reg = true;
    for (auto kind : detail::operands(ins.op)) {
      if (kind == detail::Operand::Reg) {
        out << " r" << static_cast<unsigned>(first_reg ? ins.a : ins.b);
        first_reg = false;
      } else {
        out << ' ' << ins.imm;
      }
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Machine indices. Even 2k selects builtin k; odd 2k+1 decodes the binary
// expansion of k+1 with its leading 1 removed as a program bit string.

struct MachineIndex {
  mpz_class value;

  static MachineIndex builtin(unsigned k) { return {mpz_class(2u * k)}; }

  static MachineIndex of_program(const Program& prog) {
    mpz_class k = 1;
    for (bool b : encode(prog)) k = 2 * k + (b ? 1 : 0);
    k -= 1;
    return {2 * k + 1};
  }

  bool is_builtin() const { return mpz_even_p(value.get_mpz_t()) != 0; }

  std::optional<unsigned> builtin_id() const {
    if (!is_builtin()) return std::nullopt;
    mpz_class k = value / 2;
    if (!k.fits_uint_p()) return std::nullopt;
    return static_cast<unsigned>(k.get_ui());
  }

  Bits program_bits() const {
    mpz_class k = (value - 1) / 2 + 1;
    auto width = mpz_sizeinbase(k.get_mpz_t(), 2);
    Bits out;
    for (std::size_t i = width - 1; i-- > 0;) out.push_back(mpz_tstbit(k.get_mpz_t(), i) != 0);
    return out;
  }

  Program program() const { return decode(program_bits()); }

  bool operator==(const MachineIndex&) const = default;
};

// ---------------------------------------------------------------------------
// Execution.

struct WriteRecord {
  Fuel steps;                                   // steps executed when the bit was written
  Fuel required;                                // least fuel under which the write happens
  std::optional<std::size_t> input_read_max;    // highest input position read before the write
  std::optional<std::size_t> oracle_read_max;
};

struct Instrumentation {
  std::optional<std::size_t> max_oracle_read;
  std::optional<std::size_t> max_input_read;
  std::vector<WriteRecord> writes;
  Fuel steps = 0;
  bool fell_off = false;
};

class MachineRun final : public NameImpl {
 public:
  MachineRun(Program prog, Name oracle, Name input)
      : prog_(std::move(prog)), oracle_(std::move(oracle)), input_(std::move(input)) {}

  ProbeResult probe(std::size_t n, Fuel fuel) const override {
    std::lock_guard lock(mutex_);
    advance(fuel, n + 1);
    if (n < out_.size() && writes_[n].required <= fuel) return Probe{out_[n], writes_[n].required};
    return std::nullopt;
  }

  bool observe(std::size_t limit, Fuel fuel) const override {
    std::lock_guard lock(mutex_);
    advance(fuel, limit);
    return first_one_ && *first_one_ < limit && writes_[*first_one_].required <= fuel;
  }

  /// Snapshot of the run so far; call after probing with the fuel of interest.
  Instrumentation instrumentation() const {
    std::lock_guard lock(mutex_);
    return {max_oracle_, max_input_, writes_, steps_, halted_};
  }

  const Program& program() const { return prog_; }
  std::string describe() const override { return "machine run (" + std::to_string(prog_.size()) + " instructions)"; }

 private:
  void advance(Fuel fuel, std::size_t want) const {
    while (!halted_ && out_.size() < want) {
      if (pc_ >= prog_.size()) {
        halted_ = true;
        return;
      }
      if (steps_ + 1 > fuel) return;
      const auto& ins = prog_[pc_];
      std::uint64_t next = pc_ + 1;
      auto& ra = regs_[ins.a];
      const auto rb = regs_[ins.b];
      switch (ins.op) {
        case Opcode::Const: ra = ins.imm; break;
        case Opcode::Move: ra = rb; break;
        case Opcode::Add: ra = (ra > std::numeric_limits<std::uint64_t>::max() - rb) ? std::numeric_limits<std::uint64_t>::max() : ra + rb; break;
        case Opcode::SubSat: ra = ra > rb ? ra - rb : 0; break;
        case Opcode::Jz: if (ra == 0) next = ins.imm; break;
        case Opcode::Jmp: next = ins.imm; break;
        case Opcode::ReadOracle:
        case Opcode::ReadInput: {
          const bool from_oracle = ins.op == Opcode::ReadOracle;
          auto p = (from_oracle ? oracle_ : input_).probe(rb, fuel);
          if (!p) return;  // paused; resumes under more fuel
          ra = p->bit ? 1 : 0;
          required_ = std::max(required_, p->cost);
          auto& mx = from_oracle ? max_oracle_ : max_input_;
          mx = mx ? std::max<std::size_t>(*mx, rb) : rb;
          break;
        }
        case Opcode::Write: {
          bool b = (ra & 1u) != 0;
          required_ = std::max(required_, steps_ + 1);
          if (b && !first_one_) first_one_ = out_.size();
          out_.push_back(b);
          writes_.push_back({steps_ + 1, required_, max_input_, max_oracle_});
          break;
        }
      }
      ++steps_;
      required_ = std::max(required_, steps_);
      pc_ = next;
    }
  }

  Program prog_;
  Name oracle_, input_;

  mutable std::mutex mutex_;
  mutable std::array<std::uint64_t, kRegisterCount> regs_{};
  mutable std::uint64_t pc_ = 0;
  mutable Fuel steps_ = 0;
  mutable Fuel required_ = 0;
  mutable bool halted_ = false;
  mutable Bits out_;
  mutable std::vector<WriteRecord> writes_;
  mutable std::optional<std::size_t> first_one_;
  mutable std::optional<std::size_t> max_oracle_, max_input_;
};

inline Name run_program(Program prog, Name oracle, Name input) {
  return make_name<MachineRun>(std::move(prog), std::move(oracle), std::move(input));
}

/// Instrumentation of a run produced by run_program; nullopt for other names.
inline std::optional<Instrumentation> instrument(const Name& run) {
  if (auto m = run.as<MachineRun>()) return m->instrumentation();
  return std::nullopt;
}

}  // namespace repspace::t2vm

#endif  // REPSPACE_T2VM_HPP
