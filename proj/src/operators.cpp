// SPDX-License-Identifier: Apache-2.0

#include "cutters/operators.hpp"

#include <cmath>
#include <string>

namespace cutters {

namespace {

void check_dim(int expected, const Vector& x, const char* where) {
  if (static_cast<int>(x.size()) != expected)
    throw UsageError(std::string(where) + ": dimension mismatch");
}

void check_row(const Vector& a, const char* what) {
  if (a.empty()) throw ValidationError(std::string(what) + ": empty normal");
  if (!all_finite(a)) throw ValidationError(std::string(what) + ": non-finite normal");
  if (norm_sq(a) <= 0.0) throw ValidationError(std::string(what) + ": zero normal");
}

}  // namespace

Hyperplane::Hyperplane(Vector a_, double b_) : a(std::move(a_)), b(b_) {
  check_row(a, "hyperplane");
  if (!std::isfinite(b)) throw ValidationError("hyperplane: non-finite offset");
  a_norm_sq = norm_sq(a);
}

HalfSpace::HalfSpace(Vector a_, double b_) : a(std::move(a_)), b(b_) {
  check_row(a, "half-space");
  if (!std::isfinite(b)) throw ValidationError("half-space: non-finite offset");
  a_norm_sq = norm_sq(a);
}

ConvexFunctional ConvexFunctional::affine(Vector a, double b) {
  check_row(a, "affine functional");
  if (!std::isfinite(b)) throw ValidationError("affine functional: non-finite offset");
  ConvexFunctional f;
  f.dim = static_cast<int>(a.size());
  f.value = [a, b](const Vector& x) { return dot(a, x) - b; };
  f.subgradient = [a](const Vector&) { return a; };
  return f;
}

ConvexFunctional ConvexFunctional::ball(Vector center, double radius) {
  if (center.empty()) throw ValidationError("ball: empty center");
  if (!all_finite(center) || !std::isfinite(radius))
    throw ValidationError("ball: non-finite data");
  if (radius < 0.0) throw ValidationError("ball: negative radius");
  ConvexFunctional f;
  f.dim = static_cast<int>(center.size());
  f.value = [center, radius](const Vector& x) { return dist_sq(x, center) - radius * radius; };
  f.subgradient = [center](const Vector& x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * (x[i] - center[i]);
    return g;
  };
  return f;
}

Vector project(const Hyperplane& h, const Vector& x) {
  check_dim(h.dim(), x, "project(hyperplane)");
  const double res = dot(h.a, x) - h.b;
  return add_scaled(x, -res / h.a_norm_sq, h.a);
}

Vector project(const HalfSpace& h, const Vector& x) {
  check_dim(h.dim(), x, "project(half-space)");
  const double res = dot(h.a, x) - h.b;
  if (res <= 0.0) return x;
  return add_scaled(x, -res / h.a_norm_sq, h.a);
}

Vector subgradient_project(const ConvexFunctional& f, const Vector& x) {
  check_dim(f.dim, x, "subgradient_project");
  const double c = f.value(x);
  if (c <= 0.0) return x;
  const Vector g = f.subgradient(x);
  const double gsq = norm_sq(g);
  if (gsq == 0.0) return x;  // no direction to move along
  return add_scaled(x, -c / gsq, g);
}

Vector apply(const Cutter& op, const Vector& x) {
  return std::visit(
      [&x](const auto& o) -> Vector {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Hyperplane> || std::is_same_v<T, HalfSpace>)
          return project(o, x);
        else if constexpr (std::is_same_v<T, ConvexFunctional>)
          return subgradient_project(o, x);
        else {
          check_dim(o.dim, x, "apply(custom)");
          return o.project(x);
        }
      },
      op);
}

int dim_of(const Cutter& op) {
  return std::visit(
      [](const auto& o) -> int {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Hyperplane> || std::is_same_v<T, HalfSpace>)
          return o.dim();
        else
          return o.dim;
      },
      op);
}

bool contains(const Cutter& op, const Vector& x) {
  return std::visit(
      [&x](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Hyperplane>) {
          return std::fabs(dot(o.a, x) - o.b) <= kHyperplaneMembershipTol * (1.0 + std::fabs(o.b));
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return dot(o.a, x) - o.b <= kHalfspaceMembershipTol;
        } else if constexpr (std::is_same_v<T, ConvexFunctional>) {
          return o.value(x) <= kFunctionalMembershipTol;
        } else {
          return o.contains(x);
        }
      },
      op);
}

double feasibility_gap(const Cutter& op, const Vector& x) {
  return std::visit(
      [&x, &op](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Hyperplane>) {
          return std::fabs(dot(o.a, x) - o.b) / std::sqrt(o.a_norm_sq);
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          const double res = dot(o.a, x) - o.b;
          return res > 0.0 ? res / std::sqrt(o.a_norm_sq) : 0.0;
        } else {
          return dist(apply(op, x), x);
        }
      },
      op);
}

Vector relax(const Cutter& op, double lambda, const Vector& x) {
  if (!(lambda > 0.0 && lambda <= 2.0)) throw UsageError("relax: lambda must lie in (0,2]");
  Vector tx = apply(op, x);
  if (lambda == 1.0) return tx;
  for (std::size_t i = 0; i < tx.size(); ++i) tx[i] = x[i] + lambda * (tx[i] - x[i]);
  return tx;
}

double cutter_gap(const Cutter& op, const Vector& x, const Vector& q) {
  if (x.size() != q.size()) throw UsageError("cutter_gap: dimension mismatch");
  const Vector tx = apply(op, x);
  double sep = 0.0, step_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = tx[i] - x[i];
    sep += d * (q[i] - x[i]);
    step_sq += d * d;
  }
  return sep - step_sq;
}

}  // namespace cutters
