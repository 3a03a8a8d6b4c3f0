#ifndef REPSPACE_COMPACT_HPP
#define REPSPACE_COMPACT_HPP

// K(X): saturated compact sets as points of O(O(X)). A compact set's name
// semidecides K subset U.

#include <atomic>

#include "sets.hpp"

namespace repspace {

using CompactSet = Point;

inline CompactSet make_compact(const SpaceDescriptor& x, Name name) { return {compact_space(x), std::move(name)}; }

inline void expect_compact(const Point& k, const char* what) {
  if (k.space->kind != Kind::Compact && k.space->kind != Kind::Overt)
    throw DescriptorMismatch(std::string(what) + ": not a compact set: " + to_string(k.space));
}

/// The whole space as a compact set, from its compactness witness.
inline CompactSet whole_compact(const SpaceDescriptor& x) {
  return make_compact(x, require(x->caps.compact, x, "compact"));
}

inline CompactSet cantor_as_compact() { return whole_compact(cantor()); }

/// The empty compact set: contained in every open set.
inline CompactSet empty_compact(const SpaceDescriptor& x) { return make_compact(x, fn::full_open()); }

inline Point contained_in(const CompactSet& k, const OpenSet& u) {
  expect_compact(k, "contained_in");
  if (u.space->kind != Kind::Open) throw DescriptorMismatch("contained_in: not an open set");
  if (!same_space(k.space->children[0], u.space->children[0])) throw DescriptorMismatch("contained_in: spaces differ");
  return {sierp(), apply(k.name, u.name)};
}

inline CompactSet sat_singleton(const Point& x) { return make_compact(x.space, caps::saturation_of(x.name)); }

inline CompactSet k_union(const CompactSet& a, const CompactSet& b) {
  expect_compact(a, "k_union");
  expect_compact(b, "k_union");
  if (!same_space(a.space, b.space)) throw DescriptorMismatch("k_union: spaces differ");
  return {a.space, fn::compose(fn::sierp_and(), fn::fanout(a.name, b.name))};
}

/// K n B subset U iff K subset U u B^c.
inline CompactSet k_intersect_closed(const CompactSet& k, const ClosedSet& b) {
  expect_compact(k, "k_intersect_closed");
  if (b.space->kind != Kind::Closed) throw DescriptorMismatch("k_intersect_closed: not a closed set");
  if (!same_space(k.space->children[0], b.space->children[0])) throw DescriptorMismatch("k_intersect_closed: spaces differ");
  using namespace fn;
  return {k.space, compose(k.name, curry(compose(sierp_or(), fanout(eval(), compose(b.name, proj2())))))};
}

namespace detail {

/// U -> Q(U o f): the pullback along f of a quantifier Q on X.
inline Name quantifier_image(const Name& f, const Name& q) {
  using namespace fn;
  return compose(q, curry(compose(eval(), fanout(proj1(), compose(f, proj2())))));
}

}  // namespace detail

/// f[K] subset U iff K subset f^-1(U).
inline CompactSet k_image(const Point& f, const CompactSet& k) {
  expect_compact(k, "k_image");
  auto [dom, cod] = signature(f.space, "k_image");
  if (!same_space(dom, k.space->children[0])) throw DescriptorMismatch("k_image: domain mismatch");
  return make_compact(cod, detail::quantifier_image(f.name, k.name));
}

/// A x B subset U iff B subset {y | A subset {x | (x, y) in U}}.
inline CompactSet k_product(const CompactSet& a, const CompactSet& b) {
  expect_compact(a, "k_product");
  expect_compact(b, "k_product");
  return make_compact(product_space(a.space->children[0], b.space->children[0]), caps::quantifier_product(a.name, b.name));
}

/// Projection onto factor `side` (1 or 2).
inline CompactSet k_project(const CompactSet& k, int side) {
  expect_compact(k, "k_project");
  auto base = k.space->children[0];
  if (base->kind != Kind::Product) throw DescriptorMismatch("k_project: not a set of pairs");
  Point pr{function_space(base, base->children[side == 1 ? 0 : 1]), side == 1 ? fn::proj1() : fn::proj2()};
  return k_image(pr, k);
}

/// IsEmpty on A(Cantor): the closed set's name is the open complement, so
/// emptiness is fullness of that open set.
inline Point is_empty_closed_cantor(const ClosedSet& a) {
  expect_space(closed_space(cantor()), a, "is_empty_closed_cantor");
  return {sierp(), apply(fn::builtin(Builtin::CantorIsFull), a.name)};
}

inline Point is_full(const OpenSet& u, const CompactSet& k) { return contained_in(k, u); }

inline Point is_cover(const Point& us, const CompactSet& k) { return is_full(countable_union(us), k); }

/// The search behind a tree-compact space, run directly for reporting depth
/// and fuel of the confirmation.
inline SearchResult search_is_full(const CanonicalTree& tree, const OpenSet& u, Fuel max_fuel,
                                   std::size_t frontier_cap = kDefaultFrontierCap) {
  Name un = u.name;
  TreeSearch s(tree, [un](const Name& p) { return apply(un, p); }, frontier_cap);
  return s.advance(max_fuel);
}

// ---------------------------------------------------------------------------
// Finite subcovers.

/// A sequence of open sets that records the largest index it was evaluated at.
class TracedSequenceName final : public FunctionName {
 public:
  explicit TracedSequenceName(Name us)
      : FunctionName(t2vm::MachineIndex::builtin(static_cast<unsigned>(Builtin::Compose)), pair(us, fn::identity())),
        us_(std::move(us)),
        max_(std::make_shared<std::atomic<long long>>(-1)) {}

  Name apply(const Name& x) const override {
    Name us = us_;
    auto mx = max_;
    return lazy_name(
        [us, mx, x](Fuel fuel) -> std::optional<LazyName::Resolution> {
          auto i = read_nat(x, fuel);
          if (!i) return std::nullopt;
          long long v = static_cast<long long>(i->index);
          long long cur = mx->load();
          while (v > cur && !mx->compare_exchange_weak(cur, v)) {
          }
          return LazyName::Resolution{repspace::apply(us, x), i->cost};
        },
        "traced");
  }

  /// Largest index evaluated so far, -1 if none.
  long long max_index() const { return max_->load(); }

 private:
  Name us_;
  std::shared_ptr<std::atomic<long long>> max_;
};

struct SubcoverResult {
  std::size_t n;          // union of U_0..U_n covers K
  std::size_t traced;     // largest index the confirming run evaluated
  Fuel fuel;              // fuel of the confirming run
  bool validated;         // truncated cover re-confirmed at that fuel
};

/// Runs IsCover at fuel 1, 2, 4, ... up to max_fuel. On confirmation the
/// trace bounds the indices read; the least N whose truncation (padding with
/// empty sets) still confirms at the same fuel is returned. nullopt if no
/// confirmation within max_fuel (for instance when the sets do not cover K).
inline std::optional<SubcoverResult> finite_subcover(const Point& us, const CompactSet& k, Fuel max_fuel) {
  auto elem = detail::sequence_element(us, "finite_subcover");
  if (elem->kind != Kind::Open) throw DescriptorMismatch("finite_subcover: elements must be open sets");
  auto truncated_confirms = [&](std::size_t n, Fuel f) {
    return confirmed(is_cover(Point{us.space, fn::truncate(us.name, n)}, k), f);
  };
  for (Fuel f = 1; f <= max_fuel; f *= 2) {
    auto traced = std::make_shared<const TracedSequenceName>(us.name);
    Point tus{us.space, Name(traced)};
    if (!confirmed(is_cover(tus, k), f)) {
      if (f > max_fuel / 2) break;
      continue;
    }
    auto bound = static_cast<std::size_t>(std::max<long long>(traced->max_index(), 0));
    std::size_t lo = 0, hi = bound;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (truncated_confirms(mid, f)) hi = mid;
      else lo = mid + 1;
    }
    return SubcoverResult{lo, bound, f, truncated_confirms(lo, f)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Universal quantification.

/// {y | for all x in K, (x, y) in R}.
inline OpenSet forall_rel(const OpenSet& r, const CompactSet& k) {
  expect_compact(k, "forall_rel");
  auto base = base_of(r.space, "forall_rel");
  if (r.space->kind != Kind::Open || base->kind != Kind::Product) throw DescriptorMismatch("forall_rel: not an open relation");
  if (!same_space(base->children[0], k.space->children[0])) throw DescriptorMismatch("forall_rel: spaces differ");
  return make_open(base->children[1], fn::compose(k.name, fn::curry(fn::compose(r.name, fn::swap()))));
}

/// Intersection of a compact family of open sets.
inline OpenSet k_countable_intersection_of_opens(const CompactSet& k) {
  expect_compact(k, "k_countable_intersection_of_opens");
  auto fam = k.space->children[0];
  if (fam->kind != Kind::Open) throw DescriptorMismatch("k_countable_intersection_of_opens: not a family of open sets");
  return make_open(fam->children[0], fn::compose(k.name, fn::curry(fn::compose(fn::eval(), fn::swap()))));
}

}  // namespace repspace

#endif  // REPSPACE_COMPACT_HPP
