// SPDX-License-Identifier: Apache-2.0
//
// Seeded random instances shared by the unit tests and the acceptance
// driver. Everything here is deterministic in the seed.

#ifndef CUTTERS_TESTS_SUPPORT_HPP
#define CUTTERS_TESTS_SUPPORT_HPP

#include <cmath>
#include <string>
#include <utility>

#include "cutters/problem.hpp"
#include "cutters/rng.hpp"
#include "cutters/solver.hpp"

namespace testsup {

using cutters::Cutter;
using cutters::Rng;
using cutters::Vector;

inline Vector rand_vec(Rng& rng, int dim, double lo, double hi) {
  Vector v(static_cast<std::size_t>(dim));
  for (double& c : v) c = rng.uniform(lo, hi);
  return v;
}

inline Vector rand_unit(Rng& rng, int dim) {
  for (;;) {
    Vector v(static_cast<std::size_t>(dim));
    for (double& c : v) c = rng.gaussian();
    const double n = cutters::norm(v);
    if (n > 1e-9) {
      for (double& c : v) c /= n;
      return v;
    }
  }
}

/// kind: 0 hyperplane, 1 half-space, 2 affine functional, 3 ball functional.
inline Cutter random_cutter(Rng& rng, int dim, int kind) {
  if (kind == 3) {
    Vector center = rand_vec(rng, dim, -1.0, 1.0);
    const double radius = rng.uniform(0.3, 2.0);
    return cutters::ConvexFunctional::ball(std::move(center), radius);
  }
  Vector a = rand_unit(rng, dim);
  const double scale = rng.uniform(0.5, 2.0);
  for (double& c : a) c *= scale;
  const double b = rng.uniform(-1.0, 1.0);
  switch (kind) {
    case 0:
      return cutters::Hyperplane(std::move(a), b);
    case 1:
      return cutters::HalfSpace(std::move(a), b);
    default:
      return cutters::ConvexFunctional::affine(std::move(a), b);
  }
}

/// A point in the fixed-point set of a built-in cutter: on the hyperplane,
/// strictly inside the half-space / sublevel set.
inline Vector random_fixed_point(Rng& rng, const Cutter& c) {
  const int dim = cutters::dim_of(c);
  Vector p = rand_vec(rng, dim, -3.0, 3.0);
  if (const auto* h = std::get_if<cutters::Hyperplane>(&c)) return cutters::project(*h, p);
  if (const auto* h = std::get_if<cutters::HalfSpace>(&c)) {
    Vector q = cutters::project(*h, p);
    const double t = rng.uniform(0.0, 2.0) / cutters::norm(h->a);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= t * h->a[i];
    return q;
  }
  const auto& f = std::get<cutters::ConvexFunctional>(c);
  // Built-in functionals only: affine rows behave like half-spaces, balls
  // admit interior sampling around the point where the value is smallest.
  Vector q = cutters::subgradient_project(f, p);
  int guard = 0;
  while (f.value(q) > 0.0 && ++guard < 64) q = cutters::subgradient_project(f, q);
  // Pull toward the interior along a shrinking homotopy against a known
  // interior direction: for affine that is -a, for balls the center. Use
  // the subgradient at q, which points outward for both kinds.
  Vector g = f.subgradient(q);
  const double gn = cutters::norm(g);
  if (gn > 1e-12) {
    const double t = rng.uniform(0.0, 0.5) / gn;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= t * g[i];
  }
  if (f.value(q) > 0.0) return cutters::subgradient_project(f, q);
  return q;
}

struct Instance {
  cutters::Problem problem;
  cutters::CyclicOperator op;
  Vector witness;
  Vector x0;
};

/// A consistent random system of the requested kind together with a start
/// point whose sweep displacement is at least min_residual, so step-size
/// comparisons never divide by a vanishing quantity.
inline Instance draw_instance(std::uint64_t seed, int dim, int m, cutters::ProblemKind kind,
                              double conditioning = 0.0, double min_residual = 0.5) {
  cutters::GeneratorSpec spec;
  spec.seed = seed;
  spec.dim = dim;
  spec.m = m;
  spec.kind = kind;
  spec.conditioning = conditioning;
  cutters::Problem p = cutters::generate(spec);
  cutters::CyclicOperator op = cutters::make_cyclic(p);

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Vector x0;
  for (int attempt = 0;; ++attempt) {
    const double reach = 3.0 + attempt;
    x0 = rand_vec(rng, dim, -reach, reach);
    const cutters::SweepTrace t = cutters::sweep(op, x0);
    if (t.displacement_sq >= min_residual * min_residual) break;
  }
  Vector w = *p.witness;
  return {std::move(p), std::move(op), std::move(w), std::move(x0)};
}

/// Fejer monotonicity plus the per-iteration decrease certificate, read off
/// a finished solve trace. Returns false and fills `why` on the first
/// violated record pair.
inline bool check_trace_descent(const std::vector<cutters::IterationRecord>& trace,
                                bool check_certificate, std::string* why = nullptr) {
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    const auto& a = trace[i];
    const auto& b = trace[i + 1];
    const double da = *a.dist_to_ref;
    const double db = *b.dist_to_ref;
    if (db > da + 1e-9) {
      if (why) *why = "distance to the reference grew at iteration " + std::to_string(b.k);
      return false;
    }
    if (check_certificate) {
      const double cert = da * da - db * db -
                          a.lambda * (2.0 - a.lambda) * a.sigma * a.sigma * a.residual * a.residual;
      if (cert < -1e-9 * (1.0 + da * da)) {
        if (why) *why = "decrease certificate negative at iteration " + std::to_string(a.k);
        return false;
      }
    }
  }
  return true;
}

}  // namespace testsup

#endif
