#ifndef REPSPACE_REALS_HPP
#define REPSPACE_REALS_HPP

// The real line: Cauchy names, one-sided reals as rational enumerations,
// suprema of compact and overt sets, and max of a set given both ways.

#include <variant>

#include "admissibility.hpp"

namespace repspace {

inline Point real_from_rational(const mpq_class& q) { return {real(), real_const(q)}; }

inline std::optional<mpq_class> real_approx(const Point& x, std::size_t n, Fuel fuel) {
  expect_space(real(), x, "real_approx");
  return real_approx(x.name, n, fuel);
}

enum class RealOp { Add, Sub, Mul };

inline Point real_arith(RealOp op, const Point& x, const Point& y) {
  expect_space(real(), x, "real_arith");
  expect_space(real(), y, "real_arith");
  switch (op) {
    case RealOp::Add: return {real(), real_add(x.name, y.name)};
    case RealOp::Sub: return {real(), real_sub(x.name, y.name)};
    case RealOp::Mul: return {real(), real_mul(x.name, y.name)};
  }
  throw std::invalid_argument("real_arith: unknown operation");
}

inline Point real_less(const Point& x, const Point& y) {
  expect_space(real(), x, "real_less");
  expect_space(real(), y, "real_less");
  return {sierp(), real_less(x.name, y.name)};
}

// ---------------------------------------------------------------------------
// Open sets of reals.

/// {x | x < q}
inline OpenSet real_below(const mpq_class& q) {
  return make_open(real(), fn::compose(fn::builtin(Builtin::RealLess), fn::fanout(fn::identity(), fn::const_fn(real_const(q)))));
}

/// {x | q < x}
inline OpenSet real_above(const mpq_class& q) {
  return make_open(real(), fn::compose(fn::builtin(Builtin::RealLess), fn::fanout(fn::const_fn(real_const(q)), fn::identity())));
}

/// (a, b)
inline OpenSet real_interval(const mpq_class& a, const mpq_class& b) { return set_intersection(real_above(a), real_below(b)); }

// ---------------------------------------------------------------------------
// Sets of reals.

inline std::pair<CompactSet, OvertSet> unit_interval() {
  return {whole_compact(unit_interval_space()), whole_overt(unit_interval_space())};
}

inline CompactSet finite_compact(const std::vector<mpq_class>& qs) {
  if (qs.empty()) return empty_compact(real());
  CompactSet k = sat_singleton(real_from_rational(qs[0]));
  for (std::size_t i = 1; i < qs.size(); ++i) k = k_union(k, sat_singleton(real_from_rational(qs[i])));
  return k;
}

inline OvertSet finite_overt(const std::vector<mpq_class>& qs) {
  if (qs.empty()) return empty_overt(real());
  OvertSet a = closure_singleton(real_from_rational(qs[0]));
  for (std::size_t i = 1; i < qs.size(); ++i) a = v_union(a, closure_singleton(real_from_rational(qs[i])));
  return a;
}

// ---------------------------------------------------------------------------
// One-sided reals.

inline Point to_lower(const Point& x) {
  expect_space(real(), x, "to_lower");
  auto rd = std::make_shared<std::pair<std::mutex, RealReader>>(std::piecewise_construct, std::tuple<>{},
                                                                 std::forward_as_tuple(x.name));
  return {real_lower(),
          enumeration_source([rd](std::size_t m, Fuel fuel) -> std::optional<std::pair<std::optional<mpq_class>, Fuel>> {
            std::lock_guard lock(rd->first);
            auto a = rd->second.approx(m, fuel);
            if (!a) return std::nullopt;
            return std::pair{std::optional<mpq_class>{*a->q - pow2(-static_cast<long>(m))}, a->cost};
          })};
}

inline Point to_upper(const Point& x) {
  expect_space(real(), x, "to_upper");
  auto rd = std::make_shared<std::pair<std::mutex, RealReader>>(std::piecewise_construct, std::tuple<>{},
                                                                 std::forward_as_tuple(x.name));
  return {real_upper(),
          enumeration_source([rd](std::size_t m, Fuel fuel) -> std::optional<std::pair<std::optional<mpq_class>, Fuel>> {
            std::lock_guard lock(rd->first);
            auto a = rd->second.approx(m, fuel);
            if (!a) return std::nullopt;
            return std::pair{std::optional<mpq_class>{*a->q + pow2(-static_cast<long>(m))}, a->cost};
          })};
}

/// Reads both enumerations in lockstep until the best bounds a < x < b satisfy
/// b - a < 2^-n, then emits the midpoint rounded to the 2^-(n+3) grid.
inline Point from_bounds(const Point& lower, const Point& upper) {
  expect_space(real_lower(), lower, "from_bounds");
  expect_space(real_upper(), upper, "from_bounds");
  struct State {
    std::mutex mutex;
    EnumReader l, u;
    std::size_t next = 0;
    std::optional<mpq_class> a, b;
    Fuel cost = 0;
    State(Name ln, Name un) : l(std::move(ln)), u(std::move(un)) {}
  };
  auto st = std::make_shared<State>(lower.name, upper.name);
  return {real(), real_source(
                      [st](std::size_t n, Fuel fuel) -> std::optional<std::pair<mpq_class, Fuel>> {
                        std::lock_guard lock(st->mutex);
                        const mpq_class width = pow2(-static_cast<long>(n));
                        while (!(st->a && st->b && *st->b - *st->a < width)) {
                          auto le = st->l.element(st->next, fuel);
                          if (!le) return std::nullopt;
                          auto ue = st->u.element(st->next, fuel);
                          if (!ue) return std::nullopt;
                          if (le->first && (!st->a || *le->first > *st->a)) st->a = *le->first;
                          if (ue->first && (!st->b || *ue->first < *st->b)) st->b = *ue->first;
                          st->cost = std::max({st->cost, le->second, ue->second});
                          ++st->next;
                        }
                        mpq_class mid = (*st->a + *st->b) / 2;
                        return std::pair{round_dyadic(mid, static_cast<unsigned>(n + 3)), st->cost};
                      },
                      "from bounds")};
}

/// Reads enumeration elements 0..count-1 at `fuel`: the best bound so far.
inline std::optional<mpq_class> enumeration_best(const Point& e, std::size_t count, Fuel fuel) {
  bool lower = e.space->kind == Kind::RealLower;
  if (!lower && e.space->kind != Kind::RealUpper) throw DescriptorMismatch("enumeration_best: not a one-sided real");
  EnumReader r(e.name);
  std::optional<mpq_class> best;
  for (std::size_t k = 0; k < count; ++k) {
    auto el = r.element(k, fuel);
    if (!el) break;
    if (el->first && (!best || (lower ? *el->first > *best : *el->first < *best))) best = *el->first;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Suprema.

/// Fuel schedule of the supremum enumerations: element t is decided at fuel
/// base * (t + 1)^2.
struct SupSchedule {
  Fuel base = 64;
  Fuel at(std::size_t t) const { return base * (static_cast<Fuel>(t) + 1) * (static_cast<Fuel>(t) + 1); }
};

namespace detail {

/// Element t tests one candidate c at fuel s_t: with a current bound b and step
/// exponent e, c = b -+ 2^e. A confirmed candidate becomes the bound and the
/// step doubles; otherwise the step halves and the element is a skip. Before
/// any bound exists the candidate is -+2^t.
inline Point sup_enumeration(std::function<Name(const mpq_class&)> test, bool upper, SupSchedule sched) {
  struct State {
    std::mutex mutex;
    std::optional<mpq_class> bound;
    long e = 0;
    std::size_t done = 0;
    std::vector<std::optional<mpq_class>> out;
  };
  auto st = std::make_shared<State>();
  return {upper ? real_upper() : real_lower(),
          enumeration_source(
              [st, test = std::move(test), upper, sched](std::size_t t,
                                                          Fuel fuel) -> std::optional<std::pair<std::optional<mpq_class>, Fuel>> {
                std::lock_guard lock(st->mutex);
                while (st->done <= t) {
                  const std::size_t k = st->done;
                  const Fuel s = sched.at(k);
                  if (s > fuel) return std::nullopt;
                  mpq_class c;
                  if (!st->bound) c = upper ? pow2(static_cast<long>(k)) : mpq_class(-pow2(static_cast<long>(k)));
                  else c = upper ? mpq_class(*st->bound - pow2(st->e)) : mpq_class(*st->bound + pow2(st->e));
                  if (sierp_observe(test(c), s) == SierpObservation::Confirmed) {
                    if (st->bound) ++st->e;
                    st->bound = c;
                    st->out.emplace_back(c);
                  } else {
                    if (st->bound) --st->e;
                    st->out.emplace_back();
                  }
                  ++st->done;
                }
                return std::pair{st->out[t], sched.at(t)};
              },
              upper ? "sup of compact" : "sup of overt")};
}

}  // namespace detail

/// Upper bounds q with K subset (-inf, q), converging to sup K.
inline Point sup_compact(const CompactSet& k, SupSchedule sched = {}) {
  expect_compact(k, "sup_compact");
  expect_space(real(), Point{k.space->children[0], {}}, "sup_compact");
  Name kn = k.name;
  return detail::sup_enumeration([kn](const mpq_class& q) { return apply(kn, real_below(q).name); }, true, sched);
}

/// Lower bounds q with A n (q, inf) non-empty, converging to sup A.
inline Point sup_overt(const OvertSet& a, SupSchedule sched = {}) {
  expect_overt(a, "sup_overt");
  expect_space(real(), Point{a.space->children[0], {}}, "sup_overt");
  Name an = a.name;
  return detail::sup_enumeration([an](const mpq_class& q) { return apply(an, real_above(q).name); }, false, sched);
}

/// max of a set given as a compact and as an overt set.
inline Point real_max(const CompactSet& k, const OvertSet& a, SupSchedule sched = {}) {
  return from_bounds(sup_overt(a, sched), sup_compact(k, sched));
}

// ---------------------------------------------------------------------------
// Polynomial expressions in x with rational literals.

class RealExpr {
 public:
  struct Node;
  using Ptr = std::shared_ptr<const Node>;
  struct Node {
    char op;  // 'x', 'c' (constant), '+', '-', '*', 'n' (negation)
    mpq_class value;
    Ptr lhs, rhs;
  };

  static RealExpr parse(std::string_view text) {
    Parser p{text, 0};
    Ptr e = p.expr();
    p.skip();
    if (p.pos != text.size()) throw std::invalid_argument("unexpected `" + std::string(text.substr(p.pos)) + "` in expression");
    return RealExpr(std::move(e));
  }

  mpq_class eval(const mpq_class& x) const { return eval(root_, x); }

  /// Realizer of x -> expr as a point of C(R, R).
  Point realizer() const { return {function_space(real(), real()), realizer(root_)}; }

 private:
  explicit RealExpr(Ptr root) : root_(std::move(root)) {}

  static mpq_class eval(const Ptr& n, const mpq_class& x) {
    switch (n->op) {
      case 'x': return x;
      case 'c': return n->value;
      case 'n': return -eval(n->lhs, x);
      case '+': return eval(n->lhs, x) + eval(n->rhs, x);
      case '-': return eval(n->lhs, x) - eval(n->rhs, x);
      default: return eval(n->lhs, x) * eval(n->rhs, x);
    }
  }

  static Name realizer(const Ptr& n) {
    auto binary = [](Builtin b, Name l, Name r) {
      return fn::compose(fn::builtin(b), fn::fanout(std::move(l), std::move(r)));
    };
    switch (n->op) {
      case 'x': return fn::identity();
      case 'c': return fn::const_fn(real_const(n->value));
      case 'n': return binary(Builtin::RealSub, fn::const_fn(real_const(0)), realizer(n->lhs));
      case '+': return binary(Builtin::RealAdd, realizer(n->lhs), realizer(n->rhs));
      case '-': return binary(Builtin::RealSub, realizer(n->lhs), realizer(n->rhs));
      default: return binary(Builtin::RealMul, realizer(n->lhs), realizer(n->rhs));
    }
  }

  struct Parser {
    std::string_view s;
    std::size_t pos;

    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    Ptr expr() {
      Ptr e = term();
      for (;;) {
        if (eat('+')) e = std::make_shared<const Node>(Node{'+', 0, e, term()});
        else if (eat('-')) e = std::make_shared<const Node>(Node{'-', 0, e, term()});
        else return e;
      }
    }
    Ptr term() {
      Ptr e = factor();
      while (eat('*')) e = std::make_shared<const Node>(Node{'*', 0, e, factor()});
      return e;
    }
    Ptr factor() {
      if (eat('-')) return std::make_shared<const Node>(Node{'n', 0, factor(), nullptr});
      if (eat('(')) {
        Ptr e = expr();
        if (!eat(')')) throw std::invalid_argument("missing `)` in expression");
        return e;
      }
      if (eat('x')) return std::make_shared<const Node>(Node{'x', 0, nullptr, nullptr});
      skip();
      std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/' || s[pos] == '.')) ++pos;
      if (start == pos) throw std::invalid_argument("expected a number, `x` or `(` in expression");
      return std::make_shared<const Node>(Node{'c', parse_literal(s.substr(start, pos - start)), nullptr, nullptr});
    }
  };

  static mpq_class parse_literal(std::string_view t) {
    if (auto dot = t.find('.'); dot != std::string_view::npos) {
      std::string digits = std::string(t.substr(0, dot)) + std::string(t.substr(dot + 1));
      if (digits.empty() || t.find('/') != std::string_view::npos) throw std::invalid_argument("bad literal " + std::string(t));
      mpq_class q = parse_rational(digits);
      for (std::size_t i = dot + 1; i < t.size(); ++i) q /= 10;
      return q;
    }
    return parse_rational(t);
  }

  Ptr root_;
};

}  // namespace repspace

#endif  // REPSPACE_REALS_HPP
