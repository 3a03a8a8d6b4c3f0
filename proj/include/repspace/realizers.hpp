#ifndef REPSPACE_REALIZERS_HPP
#define REPSPACE_REALIZERS_HPP

// Function-space names 0^n 1 p and universal application.
//
// An index n = 2k+1 runs the VM program decoded from k with oracle p. An index
// n = 2k binds entry k of the builtin table below, which reads its parameters
// from p through the pairing codecs. The table is append-only: entries keep
// their numbers across versions.

#include "t2vm.hpp"
#include "tree_search.hpp"

namespace repspace {

enum class Builtin : unsigned {
  // Combinators.
  Eval = 0,       // input <f, x>                 -> f(x)
  Compose = 1,    // oracle <f, g>                -> f(g(x))
  Product = 2,    // oracle <f, g>, input <x, y>  -> <f(x), g(y)>
  CurryStep = 3,  // oracle f, input x            -> Partial with oracle <f, x>
  Uncurry = 4,    // oracle g, input <x, y>       -> g(x)(y)
  ConstFn = 5,    // oracle y                     -> y
  Partial = 6,    // oracle <f, x>, input y       -> f(<x, y>)
  Diagonal = 7,   // x                            -> <x, x>
  // Version 2 extensions.
  Identity = 8,
  Proj1 = 9,
  Proj2 = 10,
  SierpAnd = 11,        // <a, b>
  SierpOr = 12,         // <a, b>
  SierpCountableOr = 13,  // x : N -> S
  NatEq = 14,           // <m, n>
  NatNeq = 15,          // <m, n>
  CantorNeq = 16,       // <p, q>
  Cylinder = 17,        // oracle <i, b>: p -> [p(i) = b]
  TupleLookup = 18,     // oracle tuple_seq r: i -> r_i
  Truncate = 19,        // oracle <U, N>: i -> U(i) if i <= N, else the empty open set
  CantorIsFull = 20,    // U : O(Cantor) -> S
  CantorDense = 21,     // i -> i-th finite word followed by zeros
  RealLess = 22,        // <x, y>
  RealAdd = 23,
  RealSub = 24,
  RealMul = 25,
  UnitIsFull = 26,      // U : O([0,1]) -> S
  DyadicDense = 27,     // i -> i-th dyadic rational of [0,1]
  Copair = 28,          // oracle <f, g>: selector bit then payload
  Inject1 = 29,
  Inject2 = 30,
};
inline constexpr unsigned kBuiltinCount = 31;

inline const char* builtin_name(Builtin b) {
  static constexpr const char* kNames[kBuiltinCount] = {
      "EVAL",        "COMPOSE",       "PRODUCT",      "CURRYSTEP",   "UNCURRY",        "CONSTFN",
      "PARTIAL",     "DIAGONAL",      "IDENTITY",     "PROJ1",       "PROJ2",          "SIERP_AND",
      "SIERP_OR",    "SIERP_COUNTABLE_OR", "NAT_EQ",  "NAT_NEQ",     "CANTOR_NEQ",     "CYLINDER",
      "TUPLE_LOOKUP", "TRUNCATE",     "CANTOR_ISFULL", "CANTOR_DENSE", "REAL_LESS",    "REAL_ADD",
      "REAL_SUB",    "REAL_MUL",      "UNIT_ISFULL",  "DYADIC_DENSE", "COPAIR",        "INJECT1",
      "INJECT2"};
  return kNames[static_cast<unsigned>(b)];
}

inline Name dispatch(const t2vm::MachineIndex& index, const Name& oracle, const Name& x);

/// The name 0^n 1 oracle, kept structurally so application needs no parsing.
class FunctionName : public NameImpl {
 public:
  FunctionName(t2vm::MachineIndex index, Name oracle) : index_(std::move(index)), oracle_(std::move(oracle)) {
    if (index_.value.fits_ulong_p()) small_ = index_.value.get_ui();
  }

  ProbeResult probe(std::size_t n, Fuel fuel) const override {
    if (!small_ || n < *small_) return Probe{false, 0};
    if (n == *small_) return Probe{true, 0};
    return oracle_.probe(n - *small_ - 1, fuel);
  }

  bool observe(std::size_t limit, Fuel) const override { return small_ && limit > *small_; }

  virtual Name apply(const Name& x) const { return dispatch(index_, oracle_, x); }

  std::string describe() const override {
    if (auto k = index_.builtin_id(); k && *k < kBuiltinCount) return builtin_name(static_cast<Builtin>(*k));
    return "machine " + index_.value.get_str();
  }

  const t2vm::MachineIndex& index() const { return index_; }
  const Name& oracle() const { return oracle_; }

 private:
  t2vm::MachineIndex index_;
  Name oracle_;
  std::optional<unsigned long> small_;
};

/// Universal application: interprets f as 0^n 1 p and runs machine n with
/// oracle p on input x.
inline Name apply(const Name& f, const Name& x) {
  if (auto fn = f.as<FunctionName>()) return fn->apply(x);
  return lazy_name(
      [f, x](Fuel fuel) -> std::optional<LazyName::Resolution> {
        auto s = scan_first_one(f, fuel);
        if (!s) return std::nullopt;
        return LazyName::Resolution{dispatch({mpz_class(static_cast<unsigned long>(s->index))}, shift(f, s->index + 1), x),
                                    s->cost};
      },
      "apply");
}

/// (index, oracle) of a function name whose separating 1 is found within fuel.
inline std::optional<std::pair<t2vm::MachineIndex, Name>> parse_function_name(const Name& f, Fuel fuel) {
  if (auto fn = f.as<FunctionName>()) return std::pair{fn->index(), fn->oracle()};
  auto s = scan_first_one(f, fuel);
  if (!s) return std::nullopt;
  return std::pair{t2vm::MachineIndex{mpz_class(static_cast<unsigned long>(s->index))}, shift(f, s->index + 1)};
}

// ---------------------------------------------------------------------------
// Name-level combinators.

namespace fn {

inline Name builtin(Builtin b, Name oracle = zeros()) {
  return make_name<FunctionName>(t2vm::MachineIndex::builtin(static_cast<unsigned>(b)), std::move(oracle));
}
inline Name machine(const t2vm::Program& prog, Name oracle = zeros()) {
  return make_name<FunctionName>(t2vm::MachineIndex::of_program(prog), std::move(oracle));
}
inline Name eval() { return builtin(Builtin::Eval); }
inline Name compose(Name f, Name g) { return builtin(Builtin::Compose, pair(std::move(f), std::move(g))); }
inline Name product(Name f, Name g) { return builtin(Builtin::Product, pair(std::move(f), std::move(g))); }
inline Name curry(Name f) { return builtin(Builtin::CurryStep, std::move(f)); }
inline Name uncurry(Name g) { return builtin(Builtin::Uncurry, std::move(g)); }
inline Name const_fn(Name y) { return builtin(Builtin::ConstFn, std::move(y)); }
inline Name partial(Name x, Name f) { return builtin(Builtin::Partial, pair(std::move(f), std::move(x))); }
inline Name diagonal() { return builtin(Builtin::Diagonal); }
inline Name identity() { return builtin(Builtin::Identity); }
inline Name proj1() { return builtin(Builtin::Proj1); }
inline Name proj2() { return builtin(Builtin::Proj2); }
inline Name fanout(Name f, Name g) { return compose(product(std::move(f), std::move(g)), diagonal()); }
inline Name swap() { return fanout(proj2(), proj1()); }
inline Name sierp_and() { return builtin(Builtin::SierpAnd); }
inline Name sierp_or() { return builtin(Builtin::SierpOr); }
inline Name sierp_countable_or() { return builtin(Builtin::SierpCountableOr); }
inline Name empty_open() { return const_fn(zeros()); }
inline Name full_open() { return const_fn(ones()); }
inline Name cylinder(std::size_t i, bool b) {
  return builtin(Builtin::Cylinder, pair(nat_literal(i), nat_literal(b ? 1 : 0)));
}
inline Name sequence(std::function<Name(std::size_t)> items) {
  return builtin(Builtin::TupleLookup, tuple_seq(std::move(items)));
}
inline Name truncate(Name us, std::size_t n) { return builtin(Builtin::Truncate, pair(std::move(us), nat_literal(n))); }

}  // namespace fn

// ---------------------------------------------------------------------------
// Builtin semantics.

namespace detail {

inline Name sierp_binary(const Name& x, bool conj) {
  Name a = unpair_first(x), b = unpair_second(x);
  return stage_name(
      [a, b, conj](Fuel n) {
        auto lim = static_cast<std::size_t>(n);
        return conj ? (a.observe(lim, n) && b.observe(lim, n)) : (a.observe(lim, n) || b.observe(lim, n));
      },
      conj ? "and" : "or");
}

/// Stage n holds iff some i with (i+1)^2 <= n has component i confirming at
/// fuel n / (i+1). A component confirming at fuel f is seen by stage
/// max((i+1)^2, (i+1) f) <= (i+1)^2 (f+1).
inline Name countable_or(const Name& xs) {
  struct State {
    Name xs;
    std::vector<Name> comps;
    const Name& at(std::size_t i) {
      while (comps.size() <= i) comps.push_back(apply(xs, nat_literal(comps.size())));
      return comps[i];
    }
  };
  auto st = std::make_shared<State>(State{xs, {}});
  return stage_name(
      [st](Fuel n) {
        for (Fuel i = 0; (i + 1) * (i + 1) <= n; ++i) {
          Fuel m = n / (i + 1);
          if (st->at(static_cast<std::size_t>(i)).observe(static_cast<std::size_t>(m), m)) return true;
        }
        return false;
      },
      "countable or");
}

inline Name nat_compare(const Name& x, bool equal) {
  Name a = unpair_first(x), b = unpair_second(x);
  return lazy_name(
      [a, b, equal](Fuel fuel) -> std::optional<LazyName::Resolution> {
        auto m = read_nat(a, fuel);
        if (!m) return std::nullopt;
        auto n = read_nat(b, fuel);
        if (!n) return std::nullopt;
        bool same = m->index == n->index;
        return LazyName::Resolution{same == equal ? ones() : zeros(), std::max(m->cost, n->cost)};
      },
      equal ? "nat eq" : "nat neq");
}

inline Name cantor_neq(const Name& x) {
  Name p = unpair_first(x), q = unpair_second(x);
  return stage_name(
      [p, q](Fuel n) {
        for (std::size_t i = 0; static_cast<Fuel>(i) < n; ++i) {
          auto a = p.probe(i, n);
          if (!a) continue;
          auto b = q.probe(i, n);
          if (b && a->bit != b->bit) return true;
        }
        return false;
      },
      "cantor neq");
}

inline Name cylinder(const Name& oracle, const Name& p) {
  Name in = unpair_first(oracle), bn = unpair_second(oracle);
  return lazy_name(
      [in, bn, p](Fuel fuel) -> std::optional<LazyName::Resolution> {
        auto i = read_nat(in, fuel);
        if (!i) return std::nullopt;
        auto b = read_nat(bn, fuel);
        if (!b) return std::nullopt;
        auto bit = p.probe(i->index, fuel);
        if (!bit) return std::nullopt;
        Fuel cost = std::max({i->cost, b->cost, bit->cost + 1});
        if (cost > fuel) return std::nullopt;
        return LazyName::Resolution{bit->bit == (b->index != 0) ? ones() : zeros(), cost};
      },
      "cylinder");
}

inline Name tree_is_full(CanonicalTree tree, const Name& u) {
  auto search = std::make_shared<TreeSearch>(std::move(tree), [u](const Name& p) { return apply(u, p); });
  return stage_name([search](Fuel n) { return search->advance(n).confirmed; }, "is full");
}

inline Bits finite_word(std::size_t i) {
  // Binary expansion of i + 1 without its leading 1: enumerates all words.
  std::uint64_t v = static_cast<std::uint64_t>(i) + 1;
  int width = 64 - __builtin_clzll(v);
  Bits w;
  for (int b = width - 2; b >= 0; --b) w.push_back(((v >> b) & 1u) != 0);
  return w;
}

inline mpq_class dyadic(std::size_t i) {
  if (i == 0) return 0;
  if (i == 1) return 1;
  std::uint64_t j = static_cast<std::uint64_t>(i) - 1;
  int level = 63 - __builtin_clzll(j);
  std::uint64_t r = j - (std::uint64_t{1} << level);
  mpq_class q(static_cast<unsigned long>(2 * r + 1));
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(level + 1));
  return q;
}

inline Name map_nat(const Name& x, std::function<Name(std::size_t)> f, std::string label) {
  return lazy_name(
      [x, f = std::move(f)](Fuel fuel) -> std::optional<LazyName::Resolution> {
        auto i = read_nat(x, fuel);
        if (!i) return std::nullopt;
        return LazyName::Resolution{f(i->index), i->cost};
      },
      std::move(label));
}

inline Name builtin_apply(Builtin b, const Name& o, const Name& x) {
  switch (b) {
    case Builtin::Eval: return apply(unpair_first(x), unpair_second(x));
    case Builtin::Compose: return apply(unpair_first(o), apply(unpair_second(o), x));
    case Builtin::Product:
      return pair(apply(unpair_first(o), unpair_first(x)), apply(unpair_second(o), unpair_second(x)));
    case Builtin::CurryStep: return fn::builtin(Builtin::Partial, pair(o, x));
    case Builtin::Uncurry: return apply(apply(o, unpair_first(x)), unpair_second(x));
    case Builtin::ConstFn: return o;
    case Builtin::Partial: return apply(unpair_first(o), pair(unpair_second(o), x));
    case Builtin::Diagonal: return pair(x, x);
    case Builtin::Identity: return x;
    case Builtin::Proj1: return unpair_first(x);
    case Builtin::Proj2: return unpair_second(x);
    case Builtin::SierpAnd: return sierp_binary(x, true);
    case Builtin::SierpOr: return sierp_binary(x, false);
    case Builtin::SierpCountableOr: return countable_or(x);
    case Builtin::NatEq: return nat_compare(x, true);
    case Builtin::NatNeq: return nat_compare(x, false);
    case Builtin::CantorNeq: return cantor_neq(x);
    case Builtin::Cylinder: return cylinder(o, x);
    case Builtin::TupleLookup: return map_nat(x, [o](std::size_t i) { return project_seq(o, i); }, "lookup");
    case Builtin::Truncate: {
      // Deciding i <= N reads only positions < i of N's name, so the cost
      // does not depend on N.
      Name us = unpair_first(o), bound = unpair_second(o);
      return lazy_name(
          [us, bound, x](Fuel fuel) -> std::optional<LazyName::Resolution> {
            auto i = read_nat(x, fuel);
            if (!i) return std::nullopt;
            bool within = true;
            Fuel cost = i->cost;
            for (std::size_t j = 0; j < i->index && within; ++j) {
              auto b = bound.probe(j, fuel);
              if (!b) return std::nullopt;
              cost = std::max(cost, b->cost);
              within = !b->bit;
            }
            return LazyName::Resolution{within ? apply(us, x) : fn::empty_open(), cost};
          },
          "truncate");
    }
    case Builtin::CantorIsFull: return tree_is_full(cantor_tree(), x);
    case Builtin::CantorDense: return map_nat(x, [](std::size_t i) { return word_then_zeros(finite_word(i)); }, "dense word");
    case Builtin::RealLess: return real_less(unpair_first(x), unpair_second(x));
    case Builtin::RealAdd: return real_add(unpair_first(x), unpair_second(x));
    case Builtin::RealSub: return real_sub(unpair_first(x), unpair_second(x));
    case Builtin::RealMul: return real_mul(unpair_first(x), unpair_second(x));
    case Builtin::UnitIsFull: return tree_is_full(unit_interval_tree(), x);
    case Builtin::DyadicDense: return map_nat(x, [](std::size_t i) { return real_const(dyadic(i)); }, "dyadic");
    case Builtin::Copair: {
      Name f = unpair_first(o), g = unpair_second(o);
      return lazy_name(
          [f, g, x](Fuel fuel) -> std::optional<LazyName::Resolution> {
            if (fuel < 1) return std::nullopt;
            auto sel = x.probe(0, fuel);
            if (!sel) return std::nullopt;
            return LazyName::Resolution{apply(sel->bit ? g : f, shift(x, 1)), std::max<Fuel>(sel->cost, 1)};
          },
          "case");
    }
    case Builtin::Inject1: return prepend(Bits{false}, x);
    case Builtin::Inject2: return prepend(Bits{true}, x);
  }
  return never();
}

}  // namespace detail

inline Name dispatch(const t2vm::MachineIndex& index, const Name& oracle, const Name& x) {
  if (index.is_builtin()) {
    auto k = index.builtin_id();
    if (!k || *k >= kBuiltinCount) return never();
    return detail::builtin_apply(static_cast<Builtin>(*k), oracle, x);
  }
  return t2vm::run_program(index.program(), oracle, x);
}

}  // namespace repspace

#endif  // REPSPACE_REALIZERS_HPP
