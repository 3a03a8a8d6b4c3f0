#ifndef REPSPACE_SEPARATION_HPP
#define REPSPACE_SEPARATION_HPP

// Computable Hausdorffness and discreteness, and the maps between set spaces
// they make computable.

#include "overt.hpp"

namespace repspace {

inline Point neq(const Point& x, const Point& y) {
  expect_space(x.space, y, "neq");
  const Name& t2 = require(x.space->caps.t2, x.space, "t2");
  return {sierp(), apply(t2, pair(x.name, y.name))};
}

inline Point eq(const Point& x, const Point& y) {
  expect_space(x.space, y, "eq");
  const Name& d = require(x.space->caps.discrete, x.space, "discrete");
  return {sierp(), apply(d, pair(x.name, y.name))};
}

/// The inequality realizer X x X -> S as an open set (the complement of the diagonal).
inline OpenSet diagonal_complement(const SpaceDescriptor& x) {
  return make_open(product_space(x, x), require(x->caps.t2, x, "t2"));
}

/// {x}: excludes exactly the points different from x.
inline ClosedSet closed_singleton(const Point& x) {
  const Name& t2 = require(x.space->caps.t2, x.space, "t2");
  return make_closed(x.space, fn::partial(x.name, t2));
}

/// x is outside K iff K subset X \ {x}.
inline ClosedSet k_to_closed(const CompactSet& k) {
  expect_compact(k, "k_to_closed");
  auto x = k.space->children[0];
  const Name& t2 = require(x->caps.t2, x, "t2");
  return make_closed(x, fn::compose(k.name, fn::curry(t2)));
}

/// x is in A iff A meets {x}.
inline OpenSet v_to_open(const OvertSet& a) {
  expect_overt(a, "v_to_open");
  auto x = a.space->children[0];
  const Name& d = require(x->caps.discrete, x, "discrete");
  return make_open(x, fn::compose(a.name, fn::curry(d)));
}

/// Graph of f : Y -> X as a closed subset of Y x X.
inline ClosedSet graph(const Point& f) {
  auto [y, x] = signature(f.space, "graph");
  const Name& t2 = require(x->caps.t2, x, "t2");
  return make_closed(product_space(y, x), fn::compose(t2, fn::product(f.name, fn::identity())));
}

/// Recovers f(x) from the graph G of f : X -> Y. The cut of G at x is the
/// closed set {f(x)}; intersecting the whole (compact) Y with it gives a
/// compact set, which Y's left inverse of kappa turns back into a point.
inline Point graph_inv(const ClosedSet& g, const Point& x) {
  if (g.space->kind != Kind::Closed) throw DescriptorMismatch("graph_inv: not a closed set");
  auto base = g.space->children[0];
  if (base->kind != Kind::Product) throw DescriptorMismatch("graph_inv: not a set of pairs");
  expect_space(base->children[0], x, "graph_inv");
  auto y = base->children[1];
  const Name& kinv = require(y->caps.admissible, y, "admissible");
  CompactSet whole = whole_compact(y);
  ClosedSet fx = make_closed(y, fn::partial(x.name, g.name));
  CompactSet k = k_intersect_closed(whole, fx);
  return {y, apply(kinv, k.name)};
}

/// f^-1(K) for f : X -> Y with Y Hausdorff and X compact.
inline CompactSet proper_preimage(const Point& f, const CompactSet& k) {
  expect_compact(k, "proper_preimage");
  auto [x, y] = signature(f.space, "proper_preimage");
  if (!same_space(y, k.space->children[0])) throw DescriptorMismatch("proper_preimage: codomain mismatch");
  ClosedSet ky = k_to_closed(k);
  ClosedSet kx = preimage(f, ky);
  return k_intersect_closed(whole_compact(x), kx);
}

}  // namespace repspace

#endif  // REPSPACE_SEPARATION_HPP
