#ifndef REPSPACE_ADMISSIBILITY_HPP
#define REPSPACE_ADMISSIBILITY_HPP

// kappa(x) = {U | x in U} and its left inverses.

#include "separation.hpp"

namespace repspace {

inline Point kappa(const Point& x) {
  return {function_space(open_space(x.space), sierp()), caps::saturation_of(x.name)};
}

inline Point kappa_inv_sierp(const Point& f) {
  expect_space(function_space(open_space(sierp()), sierp()), f, "kappa_inv_sierp");
  return {sierp(), apply(caps::kappa_inv_sierp(), f.name)};
}

/// Left inverse of kappa on C(X, Y), given one on Y (as a point of
/// C(O(O(Y)), Y)).
inline Point kappa_inv_function(const Point& kinv_y, const SpaceDescriptor& x) {
  auto [dom, y] = signature(kinv_y.space, "kappa_inv_function");
  auto fxy = function_space(x, y);
  return {function_space(function_space(open_space(fxy), sierp()), fxy), caps::kappa_inv_function(kinv_y.name)};
}

/// The registered left inverse of a space, as a point.
inline Point kappa_inverse(const SpaceDescriptor& x) {
  return {function_space(function_space(open_space(x), sierp()), x), require(x->caps.admissible, x, "admissible")};
}

/// Applies the registered left inverse.
inline Point kappa_inv(const Point& f) {
  auto opens = signature(f.space, "kappa_inv").first;
  auto x = signature(opens, "kappa_inv").first;
  return eval(kappa_inverse(x), f);
}

/// The factorisation of f : X -> Y through kappa: reflect(f)(kappa(x)) = f(x).
/// reflect(f)(F) = kinvY(U -> F(f^-1(U))).
inline Point reflect(const Point& f) {
  auto [x, y] = signature(f.space, "reflect");
  const Name& kinv = require(y->caps.admissible, y, "admissible");
  using namespace fn;
  // (U, x) -> U(f(x))
  auto h = compose(eval(), fanout(proj1(), compose(f.name, proj2())));
  // (F, U) -> F(f^-1(U))
  auto pull = compose(eval(), fanout(proj1(), compose(curry(h), proj2())));
  return {function_space(function_space(open_space(x), sierp()), y), compose(kinv, curry(pull))};
}

}  // namespace repspace

#endif  // REPSPACE_ADMISSIBILITY_HPP
