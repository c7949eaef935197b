// SPDX-License-Identifier: Apache-2.0

#ifndef CUTTERS_OPERATORS_HPP
#define CUTTERS_OPERATORS_HPP

#include <functional>
#include <utility>
#include <variant>

#include "cutters/errors.hpp"
#include "cutters/linalg.hpp"

namespace cutters {

// Default comparison tolerances. Membership tests and fixed-point detection
// take these as defaulted parameters so callers can tighten or relax them.
inline constexpr double kHyperplaneMembershipTol = 1e-9;   // scaled by 1+|b|
inline constexpr double kHalfspaceMembershipTol = 1e-12;   // absolute on <a,x>-b
inline constexpr double kFunctionalMembershipTol = 1e-12;  // absolute on c(x)
inline constexpr double kFixTol = 1e-13;                   // scaled by 1+||x||

/// Hyperplane {x : <a,x> = b}. The squared norm of the row is cached at
/// construction; zero or non-finite normals are rejected.
struct Hyperplane {
  Vector a;
  double b;
  double a_norm_sq;

  Hyperplane(Vector a_, double b_);
  int dim() const { return static_cast<int>(a.size()); }
};

/// Half-space {x : <a,x> <= b}.
struct HalfSpace {
  Vector a;
  double b;
  double a_norm_sq;

  HalfSpace(Vector a_, double b_);
  int dim() const { return static_cast<int>(a.size()); }
};

/// Convex functional c with a subgradient selection g. The induced operator
/// is the subgradient projector onto the sublevel set {x : c(x) <= 0}.
struct ConvexFunctional {
  int dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgradient;

  /// c(x) = <a,x> - b, g(x) = a.
  static ConvexFunctional affine(Vector a, double b);
  /// c(x) = ||x - center||^2 - radius^2, g(x) = 2 (x - center).
  static ConvexFunctional ball(Vector center, double radius);
};

/// User-supplied cutter: a projection-like map together with a membership
/// test for its fixed-point set.
struct CustomCutter {
  int dim = 0;
  std::function<Vector(const Vector&)> project;
  std::function<bool(const Vector&)> contains;
};

using Cutter = std::variant<Hyperplane, HalfSpace, ConvexFunctional, CustomCutter>;

/// Metric projection onto the hyperplane: x - (<a,x>-b)/||a||^2 a.
Vector project(const Hyperplane& h, const Vector& x);

/// Metric projection onto the half-space: identity on the feasible side.
Vector project(const HalfSpace& h, const Vector& x);

/// Subgradient projector: x - (c(x))_+ / ||g(x)||^2 g(x) when g(x) != 0,
/// identity otherwise. A vanishing subgradient with c(x) > 0 makes the stage
/// a no-op; sweeps flag that as a stalled stage.
Vector subgradient_project(const ConvexFunctional& f, const Vector& x);

/// Apply whichever operator the variant holds.
Vector apply(const Cutter& op, const Vector& x);

int dim_of(const Cutter& op);

/// Membership in the operator's fixed-point set, with the default tolerances
/// above (hyperplane residual scaled by 1+|b|, the others absolute).
bool contains(const Cutter& op, const Vector& x);

/// Distance-flavoured violation measure: 0 on the set, positive outside.
/// Rows report the (positive part of the) residual divided by ||a||; the
/// other kinds report the displacement of one operator application.
double feasibility_gap(const Cutter& op, const Vector& x);

/// Relaxation T_lambda x = x + lambda (Tx - x). lambda in (0,2]; lambda = 2
/// is the reflection.
Vector relax(const Cutter& op, double lambda, const Vector& x);

/// Separation certificate <Tx - x, q - x> - ||Tx - x||^2. Nonnegative for
/// every q in the operator's fixed-point set; that is the defining property
/// of a cutter.
double cutter_gap(const Cutter& op, const Vector& x, const Vector& q);

/// Generalized relaxation x + lambda sigma (Ux - x) for any callable U.
/// sigma must be positive, lambda in (0,2]. When lambda*sigma == 1 the
/// result is Ux exactly.
template <typename Op>
Vector generalized_relaxation(Op&& u, double sigma, double lambda, const Vector& x) {
  if (!(sigma > 0.0)) throw UsageError("generalized_relaxation: sigma must be positive");
  if (!(lambda > 0.0 && lambda <= 2.0))
    throw UsageError("generalized_relaxation: lambda must lie in (0,2]");
  Vector ux = std::forward<Op>(u)(x);
  if (ux.size() != x.size()) throw UsageError("generalized_relaxation: dimension mismatch");
  const double scale = lambda * sigma;
  if (scale == 1.0) return ux;
  for (std::size_t i = 0; i < ux.size(); ++i) ux[i] = x[i] + scale * (ux[i] - x[i]);
  return ux;
}

}  // namespace cutters

#endif
