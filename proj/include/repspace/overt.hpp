#ifndef REPSPACE_OVERT_HPP
#define REPSPACE_OVERT_HPP

// V(X): overt sets as points of O(O(X)). An overt set's name semidecides
// A n U != empty, so it only determines A up to closure.

#include "compact.hpp"

namespace repspace {

using OvertSet = Point;

inline OvertSet make_overt(const SpaceDescriptor& x, Name name) { return {overt_space(x), std::move(name)}; }

inline void expect_overt(const Point& a, const char* what) {
  if (a.space->kind != Kind::Overt) throw DescriptorMismatch(std::string(what) + ": not an overt set: " + to_string(a.space));
}

/// The whole space, from its overtness witness.
inline OvertSet whole_overt(const SpaceDescriptor& x) { return make_overt(x, require(x->caps.overt, x, "overt")); }

inline OvertSet empty_overt(const SpaceDescriptor& x) { return make_overt(x, fn::const_fn(zeros())); }

inline Point intersects(const OvertSet& a, const OpenSet& u) {
  expect_overt(a, "intersects");
  if (u.space->kind != Kind::Open) throw DescriptorMismatch("intersects: not an open set");
  if (!same_space(a.space->children[0], u.space->children[0])) throw DescriptorMismatch("intersects: spaces differ");
  return {sierp(), apply(a.name, u.name)};
}

/// U -> OR_i (a_i in U) for a dense sequence (a_i).
inline OvertSet nonempty_witness(const Point& dense) {
  auto elem = detail::sequence_element(dense, "nonempty_witness");
  return make_overt(elem, caps::overt_from_dense(dense.name));
}

/// The sequence of eventually-zero words, dense in Cantor space.
inline Point cantor_dense_sequence() { return make_builtin(Builtin::CantorDense, nat(), cantor()); }

inline OvertSet closure_singleton(const Point& x) { return make_overt(x.space, caps::saturation_of(x.name)); }

/// cl(V) meets U iff U n V is non-empty.
inline OvertSet closure_of_open(const OpenSet& v) {
  if (v.space->kind != Kind::Open) throw DescriptorMismatch("closure_of_open: not an open set");
  auto x = v.space->children[0];
  const Name& w = require(x->caps.overt, x, "overt");
  using namespace fn;
  return make_overt(x, compose(w, curry(compose(sierp_and(), fanout(eval(), compose(v.name, proj2()))))));
}

inline OvertSet v_union(const OvertSet& a, const OvertSet& b) {
  expect_overt(a, "v_union");
  expect_overt(b, "v_union");
  if (!same_space(a.space, b.space)) throw DescriptorMismatch("v_union: spaces differ");
  return {a.space, fn::compose(fn::sierp_or(), fn::fanout(a.name, b.name))};
}

inline OvertSet v_countable_union(const Point& as) {
  auto elem = detail::sequence_element(as, "v_countable_union");
  if (elem->kind != Kind::Overt) throw DescriptorMismatch("v_countable_union: elements must be overt sets");
  return {elem, detail::countable_join(as.name)};
}

/// A n V meets U iff A meets V n U.
inline OvertSet v_intersect_open(const OvertSet& a, const OpenSet& v) {
  expect_overt(a, "v_intersect_open");
  if (v.space->kind != Kind::Open) throw DescriptorMismatch("v_intersect_open: not an open set");
  using namespace fn;
  return {a.space, compose(a.name, curry(compose(sierp_and(), fanout(eval(), compose(v.name, proj2())))))};
}

/// pi[A] meets U iff A meets U x Y (side 1) or X x U (side 2).
inline OvertSet v_project(const OvertSet& a, int side) {
  expect_overt(a, "v_project");
  auto base = a.space->children[0];
  if (base->kind != Kind::Product) throw DescriptorMismatch("v_project: not a set of pairs");
  Name pr = side == 1 ? fn::proj1() : fn::proj2();
  return make_overt(base->children[side == 1 ? 0 : 1], detail::quantifier_image(pr, a.name));
}

/// f[A] meets U iff A meets f^-1(U).
inline OvertSet v_image(const Point& f, const OvertSet& a) {
  expect_overt(a, "v_image");
  auto [dom, cod] = signature(f.space, "v_image");
  if (!same_space(dom, a.space->children[0])) throw DescriptorMismatch("v_image: domain mismatch");
  return make_overt(cod, detail::quantifier_image(f.name, a.name));
}

/// f^-1[A] for an open map f given by its image map image_of : O(X) -> O(Y):
/// f^-1[A] meets U iff A meets f(U).
inline OvertSet v_preimage_open(const Point& image_of, const OvertSet& a) {
  expect_overt(a, "v_preimage_open");
  auto [dom, cod] = signature(image_of.space, "v_preimage_open");
  if (dom->kind != Kind::Open || cod->kind != Kind::Open) throw DescriptorMismatch("v_preimage_open: expected O(X) -> O(Y)");
  return make_overt(dom->children[0], fn::compose(a.name, image_of.name));
}

/// {y | exists x in A, (x, y) in R}.
inline OpenSet exists_rel(const OpenSet& r, const OvertSet& a) {
  expect_overt(a, "exists_rel");
  auto base = base_of(r.space, "exists_rel");
  if (r.space->kind != Kind::Open || base->kind != Kind::Product) throw DescriptorMismatch("exists_rel: not an open relation");
  if (!same_space(base->children[0], a.space->children[0])) throw DescriptorMismatch("exists_rel: spaces differ");
  return make_open(base->children[1], fn::compose(a.name, fn::curry(fn::compose(r.name, fn::swap()))));
}

/// Union of an overt family of open sets.
inline OpenSet v_countable_union_of_opens(const OvertSet& a) {
  expect_overt(a, "v_countable_union_of_opens");
  auto fam = a.space->children[0];
  if (fam->kind != Kind::Open) throw DescriptorMismatch("v_countable_union_of_opens: not a family of open sets");
  return make_open(fam->children[0], fn::compose(a.name, fn::curry(fn::compose(fn::eval(), fn::swap()))));
}

}  // namespace repspace

#endif  // REPSPACE_OVERT_HPP
