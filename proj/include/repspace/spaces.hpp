#ifndef REPSPACE_SPACES_HPP
#define REPSPACE_SPACES_HPP

// Space descriptors, points, canonical spaces and the combinator suite on
// points. Descriptors are checked structurally; whether a name really
// realizes a function is the caller's obligation.

#include "realizers.hpp"

namespace repspace {

enum class Kind {
  Nat,
  Sierp,
  Cantor,
  Product,
  Coproduct,
  Wedge,
  Function,
  Open,
  Closed,
  Compact,
  Overt,
  Real,
  RealLower,
  RealUpper,
  Subspace
};

struct SpaceNode;
using SpaceDescriptor = std::shared_ptr<const SpaceNode>;

/// Realizers witnessing properties of a space. compact: O(X) -> S deciding
/// fullness; overt: O(X) -> S deciding non-emptiness; t2: X x X -> S for
/// inequality; discrete: X x X -> S for equality; admissible: O(O(X)) -> X,
/// left inverse of kappa.
struct Capabilities {
  std::optional<Name> compact, overt, t2, discrete, admissible;
  bool t0 = false;
};

struct SpaceNode {
  Kind kind;
  std::vector<SpaceDescriptor> children;
  std::string tag;
  Capabilities caps;
};

class MissingCapability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DescriptorMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string to_string(const SpaceDescriptor& s);

namespace detail {
inline SpaceDescriptor node(Kind k, std::vector<SpaceDescriptor> ch = {}, std::string tag = {}, Capabilities caps = {}) {
  return std::make_shared<const SpaceNode>(SpaceNode{k, std::move(ch), std::move(tag), std::move(caps)});
}
}  // namespace detail

inline SpaceDescriptor sierp();

/// Open/Closed(X) as Function(X, S); Compact/Overt(X) as Function(O(X), S);
/// a subspace compares as its ambient space.
inline SpaceDescriptor normalize(const SpaceDescriptor& s) {
  switch (s->kind) {
    case Kind::Open:
    case Kind::Closed: return detail::node(Kind::Function, {s->children[0], sierp()});
    case Kind::Compact:
    case Kind::Overt:
      return detail::node(Kind::Function, {detail::node(Kind::Function, {s->children[0], sierp()}), sierp()});
    case Kind::Subspace: return normalize(s->children[0]);
    default: return s;
  }
}

inline bool same_space(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  if (a == b) return true;
  auto na = normalize(a), nb = normalize(b);
  if (na->kind != nb->kind || na->tag != nb->tag || na->children.size() != nb->children.size()) return false;
  for (std::size_t i = 0; i < na->children.size(); ++i)
    if (!same_space(na->children[i], nb->children[i])) return false;
  return true;
}

inline std::string to_string(const SpaceDescriptor& s) {
  auto c = [&](std::size_t i) { return to_string(s->children[i]); };
  switch (s->kind) {
    case Kind::Nat: return "N";
    case Kind::Sierp: return "S";
    case Kind::Cantor: return "Cantor";
    case Kind::Real: return "R";
    case Kind::RealLower: return "R<";
    case Kind::RealUpper: return "R>";
    case Kind::Product: return "(" + c(0) + " x " + c(1) + ")";
    case Kind::Coproduct: return "(" + c(0) + " + " + c(1) + ")";
    case Kind::Wedge: return "(" + c(0) + " ^ " + c(1) + ")";
    case Kind::Function: return "C(" + c(0) + ", " + c(1) + ")";
    case Kind::Open: return "O(" + c(0) + ")";
    case Kind::Closed: return "A(" + c(0) + ")";
    case Kind::Compact: return "K(" + c(0) + ")";
    case Kind::Overt: return "V(" + c(0) + ")";
    case Kind::Subspace: return c(0) + "|" + s->tag;
  }
  return "?";
}

struct Point {
  SpaceDescriptor space;
  Name name;
};

inline void expect_space(const SpaceDescriptor& want, const Point& p, const char* what) {
  if (!same_space(want, p.space))
    throw DescriptorMismatch(std::string(what) + ": expected " + to_string(want) + ", got " + to_string(p.space));
}

/// (domain, codomain) of a function-like descriptor.
inline std::pair<SpaceDescriptor, SpaceDescriptor> signature(const SpaceDescriptor& s, const char* what) {
  auto n = normalize(s);
  if (n->kind != Kind::Function) throw DescriptorMismatch(std::string(what) + ": not a function space: " + to_string(s));
  return {n->children[0], n->children[1]};
}

inline const Name& require(const std::optional<Name>& cap, const SpaceDescriptor& s, const char* which) {
  if (!cap) throw MissingCapability(to_string(s) + " has no " + which + " capability");
  return *cap;
}

// ---------------------------------------------------------------------------
// Capability realizers that are pure combinator terms.

namespace caps {

/// sat{x} : U -> U(x).
inline Name saturation_of(Name x) { return fn::compose(fn::eval(), fn::fanout(fn::identity(), fn::const_fn(std::move(x)))); }

/// Overtness from a dense sequence: U -> OR_i U(a_i).
inline Name overt_from_dense(Name dense) {
  using namespace fn;
  return compose(sierp_countable_or(), curry(compose(eval(), fanout(proj1(), compose(std::move(dense), proj2())))));
}

/// kappa^-1 on S: F -> F({T}), where {T} is named by the identity.
inline Name kappa_inv_sierp() { return fn::compose(fn::eval(), fn::fanout(fn::identity(), fn::const_fn(fn::identity()))); }

/// Left inverse of kappa on C(X, Y) from one on Y: F -> (x -> kinvY(U -> F({g | g(x) in U}))).
inline Name kappa_inv_function(Name kinv_y) {
  using namespace fn;
  auto p11 = compose(proj1(), proj1());
  auto p21 = compose(proj2(), proj1());
  // ((U, x), g) -> U(g(x))
  auto h3 = compose(eval(), fanout(p11, compose(eval(), fanout(proj2(), p21))));
  // ((F, x), U) -> F(curry(h3)(U, x))
  auto h2 = compose(eval(), fanout(p11, compose(curry(h3), fanout(proj2(), p21))));
  return curry(compose(std::move(kinv_y), curry(h2)));
}

/// Product of two "for all"/"exists" quantifiers: U -> Q2(y -> Q1(x -> U(x, y))).
inline Name quantifier_product(Name q1, Name q2) {
  using namespace fn;
  auto h0 = compose(eval(), fanout(compose(proj1(), proj1()), fanout(proj2(), compose(proj2(), proj1()))));
  return compose(std::move(q2), curry(compose(std::move(q1), curry(h0))));
}

/// (x1, y1) != (x2, y2) from inequalities on the factors.
inline Name product_neq(Name tx, Name ty) {
  using namespace fn;
  auto p11 = compose(proj1(), proj1()), p12 = compose(proj1(), proj2());
  auto p21 = compose(proj2(), proj1()), p22 = compose(proj2(), proj2());
  return compose(sierp_or(), fanout(compose(std::move(tx), fanout(p11, p12)), compose(std::move(ty), fanout(p21, p22))));
}

inline Name real_neq() {
  using namespace fn;
  auto less = builtin(Builtin::RealLess);
  return compose(sierp_or(), fanout(less, compose(less, swap())));
}

}  // namespace caps

// ---------------------------------------------------------------------------
// Canonical spaces.

inline SpaceDescriptor nat() {
  static const SpaceDescriptor s = [] {
    Capabilities c;
    c.t2 = fn::builtin(Builtin::NatNeq);
    c.discrete = fn::builtin(Builtin::NatEq);
    c.overt = caps::overt_from_dense(fn::identity());
    c.t0 = true;
    return detail::node(Kind::Nat, {}, {}, c);
  }();
  return s;
}

inline SpaceDescriptor sierp() {
  static const SpaceDescriptor s = [] {
    Capabilities c;
    c.compact = caps::saturation_of(zeros());  // IsFull(U) = U(bottom)
    c.overt = caps::saturation_of(ones());     // IsNonEmpty(U) = U(top)
    c.admissible = caps::kappa_inv_sierp();
    c.t0 = true;
    return detail::node(Kind::Sierp, {}, {}, c);
  }();
  return s;
}

inline SpaceDescriptor cantor() {
  static const SpaceDescriptor s = [] {
    Capabilities c;
    c.compact = fn::builtin(Builtin::CantorIsFull);
    c.overt = caps::overt_from_dense(fn::builtin(Builtin::CantorDense));
    c.t2 = fn::builtin(Builtin::CantorNeq);
    c.t0 = true;
    return detail::node(Kind::Cantor, {}, {}, c);
  }();
  return s;
}

inline SpaceDescriptor real() {
  static const SpaceDescriptor s = [] {
    Capabilities c;
    c.t2 = caps::real_neq();
    c.t0 = true;
    return detail::node(Kind::Real, {}, {}, c);
  }();
  return s;
}

inline SpaceDescriptor real_lower() { return detail::node(Kind::RealLower); }
inline SpaceDescriptor real_upper() { return detail::node(Kind::RealUpper); }

/// [0,1] as a subspace of R, compact via its canonical tree and overt via dyadics.
inline SpaceDescriptor unit_interval_space() {
  static const SpaceDescriptor s = [] {
    Capabilities c = real()->caps;
    c.compact = fn::builtin(Builtin::UnitIsFull);
    c.overt = caps::overt_from_dense(fn::builtin(Builtin::DyadicDense));
    return detail::node(Kind::Subspace, {real()}, "[0,1]", c);
  }();
  return s;
}

inline SpaceDescriptor product_space(SpaceDescriptor x, SpaceDescriptor y) {
  Capabilities c;
  if (x->caps.compact && y->caps.compact) c.compact = caps::quantifier_product(*x->caps.compact, *y->caps.compact);
  if (x->caps.overt && y->caps.overt) c.overt = caps::quantifier_product(*x->caps.overt, *y->caps.overt);
  if (x->caps.t2 && y->caps.t2) c.t2 = caps::product_neq(*x->caps.t2, *y->caps.t2);
  c.t0 = x->caps.t0 && y->caps.t0;
  return detail::node(Kind::Product, {std::move(x), std::move(y)}, {}, c);
}

inline SpaceDescriptor coproduct_space(SpaceDescriptor x, SpaceDescriptor y) {
  return detail::node(Kind::Coproduct, {std::move(x), std::move(y)});
}

inline SpaceDescriptor wedge_space(SpaceDescriptor x, SpaceDescriptor y) {
  return detail::node(Kind::Wedge, {std::move(x), std::move(y)});
}

inline SpaceDescriptor function_space(SpaceDescriptor x, SpaceDescriptor y) {
  Capabilities c;
  if (y->caps.admissible) c.admissible = caps::kappa_inv_function(*y->caps.admissible);
  return detail::node(Kind::Function, {std::move(x), std::move(y)}, {}, c);
}

inline SpaceDescriptor open_space(SpaceDescriptor x) { return detail::node(Kind::Open, {std::move(x)}); }
inline SpaceDescriptor closed_space(SpaceDescriptor x) { return detail::node(Kind::Closed, {std::move(x)}); }
inline SpaceDescriptor compact_space(SpaceDescriptor x) { return detail::node(Kind::Compact, {std::move(x)}); }
inline SpaceDescriptor overt_space(SpaceDescriptor x) { return detail::node(Kind::Overt, {std::move(x)}); }

/// The underlying space of O/A/K/V(X).
inline SpaceDescriptor base_of(const SpaceDescriptor& s, const char* what) {
  switch (s->kind) {
    case Kind::Open:
    case Kind::Closed:
    case Kind::Compact:
    case Kind::Overt: return s->children[0];
    default: throw DescriptorMismatch(std::string(what) + ": not a set space: " + to_string(s));
  }
}

// ---------------------------------------------------------------------------
// Naturals and the Sierpinski space.

inline Point nat_encode(std::size_t n) { return {nat(), nat_literal(n)}; }

/// nullopt when the separating 1 is not found within fuel.
inline std::optional<std::size_t> nat_decode(const Point& x, Fuel fuel) {
  expect_space(nat(), x, "nat_decode");
  auto s = read_nat(x.name, fuel);
  if (!s) return std::nullopt;
  return s->index;
}

enum class SierpObservation { Confirmed, Unknown };

inline const char* to_string(SierpObservation o) { return o == SierpObservation::Confirmed ? "Confirmed" : "Unknown"; }

/// Confirmed iff a 1 is observable among the first `fuel` bits at fuel `fuel`.
inline SierpObservation sierp_observe(const Name& s, Fuel fuel) {
  return s.observe(static_cast<std::size_t>(std::min<Fuel>(fuel, std::numeric_limits<std::size_t>::max())), fuel)
             ? SierpObservation::Confirmed
             : SierpObservation::Unknown;
}

inline SierpObservation sierp_observe(const Point& s, Fuel fuel) {
  expect_space(sierp(), s, "sierp_observe");
  return sierp_observe(s.name, fuel);
}

inline bool confirmed(const Point& s, Fuel fuel) { return sierp_observe(s, fuel) == SierpObservation::Confirmed; }

inline Point sierp_top() { return {sierp(), ones()}; }
inline Point sierp_bottom() { return {sierp(), zeros()}; }

/// The Sierpinski point 0^k 1^omega (top, observable from bit k).
inline Point sierp_top_at(std::size_t k) {
  Bits w(k, false);
  return {sierp(), ultimately_periodic(std::move(w), Bits{true})};
}

// ---------------------------------------------------------------------------
// Products and coproducts.

inline Point make_product(const Point& x, const Point& y) { return {product_space(x.space, y.space), pair(x.name, y.name)}; }

inline Point proj1(const Point& p) {
  if (p.space->kind != Kind::Product) throw DescriptorMismatch("proj1: not a product: " + to_string(p.space));
  return {p.space->children[0], unpair_first(p.name)};
}

inline Point proj2(const Point& p) {
  if (p.space->kind != Kind::Product) throw DescriptorMismatch("proj2: not a product: " + to_string(p.space));
  return {p.space->children[1], unpair_second(p.name)};
}

inline Point inject1(const Point& x, const SpaceDescriptor& other) {
  return {coproduct_space(x.space, other), prepend(Bits{false}, x.name)};
}

inline Point inject2(const SpaceDescriptor& other, const Point& y) {
  return {coproduct_space(other, y.space), prepend(Bits{true}, y.name)};
}

/// Reads the selector bit; nullopt if it is unavailable at fuel.
inline std::optional<std::pair<unsigned, Point>> case_split(const Point& c, Fuel fuel) {
  if (c.space->kind != Kind::Coproduct) throw DescriptorMismatch("case_split: not a coproduct: " + to_string(c.space));
  auto sel = c.name.bit(0, fuel);
  if (!sel) return std::nullopt;
  unsigned i = *sel ? 1 : 0;
  return std::pair{i, Point{c.space->children[i], shift(c.name, 1)}};
}

// ---------------------------------------------------------------------------
// Function spaces.

inline Point make_function(const t2vm::MachineIndex& n, Name oracle, SpaceDescriptor dom, SpaceDescriptor cod) {
  return {function_space(std::move(dom), std::move(cod)), make_name<FunctionName>(n, std::move(oracle))};
}

inline Point make_builtin(Builtin b, SpaceDescriptor dom, SpaceDescriptor cod, Name oracle = zeros()) {
  return {function_space(std::move(dom), std::move(cod)), fn::builtin(b, std::move(oracle))};
}

inline Point make_program(const t2vm::Program& prog, SpaceDescriptor dom, SpaceDescriptor cod, Name oracle = zeros()) {
  return {function_space(std::move(dom), std::move(cod)), fn::machine(prog, std::move(oracle))};
}

inline Point eval(const Point& f, const Point& x) {
  auto [dom, cod] = signature(f.space, "eval");
  expect_space(dom, x, "eval argument");
  return {cod, apply(f.name, x.name)};
}

inline Point identity_fn(const SpaceDescriptor& x) { return {function_space(x, x), fn::identity()}; }

inline Point const_fn(const SpaceDescriptor& dom, const Point& y) { return {function_space(dom, y.space), fn::const_fn(y.name)}; }

/// f : X x Y -> Z gives X -> C(Y, Z).
inline Point curry(const Point& f) {
  auto [dom, cod] = signature(f.space, "curry");
  if (dom->kind != Kind::Product) throw DescriptorMismatch("curry: domain is not a product: " + to_string(dom));
  return {function_space(dom->children[0], function_space(dom->children[1], cod)), fn::curry(f.name)};
}

/// g : X -> C(Y, Z) gives X x Y -> Z.
inline Point uncurry(const Point& g) {
  auto [x, inner] = signature(g.space, "uncurry");
  auto [y, z] = signature(inner, "uncurry");
  return {function_space(product_space(x, y), z), fn::uncurry(g.name)};
}

/// f after g.
inline Point compose(const Point& f, const Point& g) {
  auto [fd, fc] = signature(f.space, "compose");
  auto [gd, gc] = signature(g.space, "compose");
  if (!same_space(fd, gc)) throw DescriptorMismatch("compose: " + to_string(gc) + " does not match " + to_string(fd));
  return {function_space(gd, fc), fn::compose(f.name, g.name)};
}

inline Point product_map(const Point& f, const Point& g) {
  auto [fd, fc] = signature(f.space, "product_map");
  auto [gd, gc] = signature(g.space, "product_map");
  return {function_space(product_space(fd, gd), product_space(fc, gc)), fn::product(f.name, g.name)};
}

/// y -> f(x, y).
inline Point partial(const Point& x, const Point& f) {
  auto [dom, cod] = signature(f.space, "partial");
  if (dom->kind != Kind::Product) throw DescriptorMismatch("partial: domain is not a product: " + to_string(dom));
  expect_space(dom->children[0], x, "partial");
  return {function_space(dom->children[1], cod), fn::partial(x.name, f.name)};
}

/// Copairing f + g : X + Y -> Z.
inline Point copair(const Point& f, const Point& g) {
  auto [fd, fc] = signature(f.space, "copair");
  auto [gd, gc] = signature(g.space, "copair");
  if (!same_space(fc, gc)) throw DescriptorMismatch("copair: codomains differ");
  return {function_space(coproduct_space(fd, gd), fc), fn::builtin(Builtin::Copair, pair(f.name, g.name))};
}

/// Observational equality: equal prefixes of length `bits` at `fuel`;
/// nullopt if either prefix is unavailable.
inline std::optional<bool> prefix_equal(const Name& a, const Name& b, std::size_t bits, Fuel fuel) {
  auto pa = a.prefix(bits, fuel);
  if (!pa) return std::nullopt;
  auto pb = b.prefix(bits, fuel);
  if (!pb) return std::nullopt;
  return *pa == *pb;
}

}  // namespace repspace

#endif  // REPSPACE_SPACES_HPP
