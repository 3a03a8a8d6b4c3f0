#ifndef REPSPACE_SETS_HPP
#define REPSPACE_SETS_HPP

// Sierpinski logic and the spaces O(X), A(X). An open and a closed set share
// one name format, a map X -> S: for O(X) the value T marks members, for A(X)
// it marks non-members. Complement changes only the descriptor.

#include "spaces.hpp"

namespace repspace {

using OpenSet = Point;
using ClosedSet = Point;

inline Point sierp_and(const Point& a, const Point& b) {
  expect_space(sierp(), a, "sierp_and");
  expect_space(sierp(), b, "sierp_and");
  return {sierp(), apply(fn::sierp_and(), pair(a.name, b.name))};
}

inline Point sierp_or(const Point& a, const Point& b) {
  expect_space(sierp(), a, "sierp_or");
  expect_space(sierp(), b, "sierp_or");
  return {sierp(), apply(fn::sierp_or(), pair(a.name, b.name))};
}

/// Confirms within fuel (i+1)^2 (f_i + 1) when component i confirms at fuel f_i.
inline Point sierp_countable_or(const Point& xs) {
  expect_space(function_space(nat(), sierp()), xs, "sierp_countable_or");
  return {sierp(), apply(fn::sierp_countable_or(), xs.name)};
}

inline OpenSet make_open(const SpaceDescriptor& x, Name name) { return {open_space(x), std::move(name)}; }
inline ClosedSet make_closed(const SpaceDescriptor& x, Name name) { return {closed_space(x), std::move(name)}; }

inline OpenSet open_from(const Point& f) {
  auto [dom, cod] = signature(f.space, "open_from");
  expect_space(sierp(), Point{cod, f.name}, "open_from");
  return make_open(dom, f.name);
}

inline OpenSet empty_open(const SpaceDescriptor& x) { return make_open(x, fn::empty_open()); }
inline OpenSet full_open(const SpaceDescriptor& x) { return make_open(x, fn::full_open()); }
inline ClosedSet empty_closed(const SpaceDescriptor& x) { return make_closed(x, fn::full_open()); }
inline ClosedSet full_closed(const SpaceDescriptor& x) { return make_closed(x, fn::empty_open()); }

/// {p | p(i) = b} on Cantor space.
inline OpenSet cantor_cylinder(std::size_t i, bool b) { return make_open(cantor(), fn::cylinder(i, b)); }

inline bool is_closed(const Point& s) { return s.space->kind == Kind::Closed; }

inline Point complement(const Point& s) {
  switch (s.space->kind) {
    case Kind::Open: return make_closed(s.space->children[0], s.name);
    case Kind::Closed: return make_open(s.space->children[0], s.name);
    default: throw DescriptorMismatch("complement: not an open or closed set: " + to_string(s.space));
  }
}

namespace detail {

inline void expect_same_kind(const Point& a, const Point& b, const char* what) {
  if (a.space->kind != b.space->kind || (a.space->kind != Kind::Open && a.space->kind != Kind::Closed))
    throw DescriptorMismatch(std::string(what) + ": operands must both be open or both closed");
  if (!same_space(a.space, b.space)) throw DescriptorMismatch(std::string(what) + ": different underlying spaces");
}

inline Name pointwise(Name op, Name u, Name v) { return fn::compose(std::move(op), fn::fanout(std::move(u), std::move(v))); }

}  // namespace detail

/// Open sets join by OR; closed sets by AND on the non-membership side.
inline Point set_union(const Point& a, const Point& b) {
  detail::expect_same_kind(a, b, "set_union");
  Name op = is_closed(a) ? fn::sierp_and() : fn::sierp_or();
  return {a.space, detail::pointwise(std::move(op), a.name, b.name)};
}

inline Point set_intersection(const Point& a, const Point& b) {
  detail::expect_same_kind(a, b, "set_intersection");
  Name op = is_closed(a) ? fn::sierp_or() : fn::sierp_and();
  return {a.space, detail::pointwise(std::move(op), a.name, b.name)};
}

namespace detail {

/// x -> OR_n Us(n)(x).
inline Name countable_join(Name us) {
  return fn::compose(fn::sierp_countable_or(), fn::curry(fn::compose(fn::uncurry(std::move(us)), fn::swap())));
}

inline SpaceDescriptor sequence_element(const Point& seq, const char* what) {
  auto [dom, cod] = signature(seq.space, what);
  if (!same_space(dom, nat())) throw DescriptorMismatch(std::string(what) + ": not a sequence");
  return cod;
}

}  // namespace detail

/// Union of a sequence of open sets.
inline OpenSet countable_union(const Point& us) {
  auto elem = detail::sequence_element(us, "countable_union");
  if (elem->kind != Kind::Open) throw DescriptorMismatch("countable_union: elements must be open sets");
  return {elem, detail::countable_join(us.name)};
}

/// Intersection of a sequence of closed sets; the same realizer as the union
/// of their complements.
inline ClosedSet countable_intersection(const Point& as) {
  auto elem = detail::sequence_element(as, "countable_intersection");
  if (elem->kind != Kind::Closed) throw DescriptorMismatch("countable_intersection: elements must be closed sets");
  return {elem, detail::countable_join(as.name)};
}

/// A sequence of sets as a point of C(N, O(X)) or C(N, A(X)).
inline Point set_sequence(const SpaceDescriptor& set_space, std::function<Name(std::size_t)> items) {
  return {function_space(nat(), set_space), fn::sequence(std::move(items))};
}

inline OpenSet preimage(const Point& f, const Point& u) {
  auto [dom, cod] = signature(f.space, "preimage");
  if (u.space->kind != Kind::Open && u.space->kind != Kind::Closed)
    throw DescriptorMismatch("preimage: not an open or closed set");
  if (!same_space(cod, u.space->children[0])) throw DescriptorMismatch("preimage: codomain mismatch");
  return {detail::node(u.space->kind, {dom}), fn::compose(u.name, f.name)};
}

/// T iff x in U (for a closed set: T iff x is outside it).
inline Point member(const Point& x, const Point& u) {
  auto base = base_of(u.space, "member");
  expect_space(base, x, "member");
  return {sierp(), apply(u.name, x.name)};
}

inline ClosedSet closed_product(const ClosedSet& a, const ClosedSet& b) {
  if (a.space->kind != Kind::Closed || b.space->kind != Kind::Closed)
    throw DescriptorMismatch("closed_product: operands must be closed sets");
  return make_closed(product_space(a.space->children[0], b.space->children[0]),
                     fn::compose(fn::sierp_or(), fn::product(a.name, b.name)));
}

inline OpenSet open_product(const OpenSet& a, const OpenSet& b) {
  if (a.space->kind != Kind::Open || b.space->kind != Kind::Open)
    throw DescriptorMismatch("open_product: operands must be open sets");
  return make_open(product_space(a.space->children[0], b.space->children[0]),
                   fn::compose(fn::sierp_and(), fn::product(a.name, b.name)));
}

/// {x | (x, y) in U}.
inline Point cut(const Point& y, const Point& u) {
  auto base = base_of(u.space, "cut");
  if (base->kind != Kind::Product) throw DescriptorMismatch("cut: not a set of pairs");
  expect_space(base->children[1], y, "cut");
  return {detail::node(u.space->kind, {base->children[0]}),
          fn::compose(u.name, fn::fanout(fn::identity(), fn::const_fn(y.name)))};
}

/// prod_n A_n in A(C(N, X)): s is excluded iff some s(n) is excluded from A_n.
inline ClosedSet seq_closed_product(const Point& as) {
  auto elem = detail::sequence_element(as, "seq_closed_product");
  if (elem->kind != Kind::Closed) throw DescriptorMismatch("seq_closed_product: elements must be closed sets");
  using namespace fn;
  // (s, n) -> A_n(s(n))
  auto g = compose(eval(), fanout(compose(as.name, proj2()), eval()));
  return make_closed(function_space(nat(), elem->children[0]), compose(sierp_countable_or(), curry(g)));
}

}  // namespace repspace

#endif  // REPSPACE_SETS_HPP
