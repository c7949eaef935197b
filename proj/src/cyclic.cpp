// SPDX-License-Identifier: Apache-2.0

#include "cutters/cyclic.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace cutters {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void ensure_not_fixed(const SweepTrace& t, double fix_tol, const char* where) {
  if (sweep_fixed(t, fix_tol))
    throw UsageError(std::string(where) + ": sweep starts at a fixed point");
}

}  // namespace

CyclicOperator::CyclicOperator(std::vector<Cutter> stages) : stages_(std::move(stages)) {
  if (stages_.empty()) throw UsageError("cyclic operator: no stages");
  dim_ = dim_of(stages_.front());
  for (const Cutter& c : stages_)
    if (dim_of(c) != dim_) throw UsageError("cyclic operator: stages disagree on dimension");
}

Vector CyclicOperator::apply(const Vector& x) const {
  Vector cur = x;
  for (const Cutter& c : stages_) cur = cutters::apply(c, cur);
  return cur;
}

bool SweepTrace::subgradient_stalled() const {
  for (const StageInfo& s : stages)
    if (s.kind == StageKind::Subgradient && s.residual > 0.0 && s.grad_sq == 0.0) return true;
  return false;
}

SweepTrace sweep(const CyclicOperator& u, const Vector& x) {
  if (static_cast<int>(x.size()) != u.dim()) throw UsageError("sweep: dimension mismatch");
  const int m = u.size();
  SweepTrace t;
  t.points.reserve(static_cast<std::size_t>(m) + 1);
  t.increments.reserve(static_cast<std::size_t>(m));
  t.stages.reserve(static_cast<std::size_t>(m));
  t.points.push_back(x);

  for (int i = 0; i < m; ++i) {
    const Vector& prev = t.points.back();
    StageInfo info{StageKind::Custom, kNaN, kNaN};
    Vector next = std::visit(
        [&prev, &info](const auto& o) -> Vector {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Hyperplane>) {
            const double res = dot(o.a, prev) - o.b;
            info = {StageKind::Hyperplane, res, o.a_norm_sq};
            return add_scaled(prev, -res / o.a_norm_sq, o.a);
          } else if constexpr (std::is_same_v<T, HalfSpace>) {
            const double res = dot(o.a, prev) - o.b;
            info = {StageKind::HalfSpace, res, o.a_norm_sq};
            if (res <= 0.0) return prev;
            return add_scaled(prev, -res / o.a_norm_sq, o.a);
          } else if constexpr (std::is_same_v<T, ConvexFunctional>) {
            const double c = o.value(prev);
            const Vector g = o.subgradient(prev);
            const double gsq = norm_sq(g);
            info = {StageKind::Subgradient, c, gsq};
            if (c <= 0.0 || gsq == 0.0) return prev;
            return add_scaled(prev, -c / gsq, g);
          } else {
            return o.project(prev);
          }
        },
        u.stage(i));

    Vector y = sub(next, prev);
    t.increment_sq_sum += norm_sq(y);
    t.increments.push_back(std::move(y));
    t.stages.push_back(info);
    t.points.push_back(std::move(next));
  }

  t.displacement_sq = dist_sq(t.points.back(), t.points.front());
  return t;
}

bool sweep_fixed(const SweepTrace& t, double fix_tol) {
  return std::sqrt(t.displacement_sq) <= fix_tol * (1.0 + norm(t.start()));
}

double sigma_max_generic(const SweepTrace& t, double fix_tol) {
  ensure_not_fixed(t, fix_tol, "sigma_max_generic");
  return (t.displacement_sq + t.increment_sq_sum) / (2.0 * t.displacement_sq);
}

double sigma_kaczmarz(const CyclicOperator& u, const SweepTrace& t, double fix_tol) {
  ensure_not_fixed(t, fix_tol, "sigma_kaczmarz");
  if (t.size() != u.size()) throw UsageError("sigma_kaczmarz: trace does not match operator");
  const Vector& x = t.start();
  double num = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const auto* h = std::get_if<Hyperplane>(&u.stage(i));
    if (!h) throw UsageError("sigma_kaczmarz: stage is not a hyperplane");
    const double res_x = h->b - dot(h->a, x);
    const double res_u = -t.stages[static_cast<std::size_t>(i)].residual;  // b - <a,u^{i-1}>
    num += res_x * res_u / h->a_norm_sq;
  }
  return num / t.displacement_sq;
}

double sigma_halfspace(const CyclicOperator& u, const SweepTrace& t, double fix_tol) {
  ensure_not_fixed(t, fix_tol, "sigma_halfspace");
  if (t.size() != u.size()) throw UsageError("sigma_halfspace: trace does not match operator");
  const Vector& x = t.start();
  double num = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const auto* h = std::get_if<HalfSpace>(&u.stage(i));
    if (!h) throw UsageError("sigma_halfspace: stage is not a half-space");
    const double res_u = t.stages[static_cast<std::size_t>(i)].residual;  // <a,u^{i-1}> - b
    if (res_u <= 0.0) continue;
    num += (dot(h->a, x) - h->b) * res_u / h->a_norm_sq;
  }
  return num / t.displacement_sq;
}

double sigma_subgrad(const CyclicOperator& u, const SweepTrace& t, double fix_tol) {
  ensure_not_fixed(t, fix_tol, "sigma_subgrad");
  if (t.size() != u.size()) throw UsageError("sigma_subgrad: trace does not match operator");
  const Vector& x = t.start();
  double num = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const auto* f = std::get_if<ConvexFunctional>(&u.stage(i));
    if (!f) throw UsageError("sigma_subgrad: stage is not a convex functional");
    const StageInfo& s = t.stages[static_cast<std::size_t>(i)];
    if (s.residual <= 0.0 || s.grad_sq == 0.0) continue;  // inactive or stalled stage
    const Vector g = f->subgradient(t.points[static_cast<std::size_t>(i)]);
    double inner = 0.0;  // <u^i - x, g_i(u^{i-1})>
    const Vector& ui = t.points[static_cast<std::size_t>(i) + 1];
    for (std::size_t j = 0; j < x.size(); ++j) inner += (ui[j] - x[j]) * g[j];
    num -= s.residual / s.grad_sq * inner;
  }
  return num / t.displacement_sq;
}

double apply_policy(const StepPolicy& p, const CyclicOperator& u, const SweepTrace& t,
                    double fix_tol) {
  if (p.kind == StepPolicy::Kind::Clamped && !(p.alpha > 0.0 && p.alpha <= 0.5))
    throw UsageError("apply_policy: clamp alpha must lie in (0, 1/2]");
  if (sweep_fixed(t, fix_tol)) return 1.0;

  switch (p.kind) {
    case StepPolicy::Kind::Unit:
      return 1.0;
    case StepPolicy::Kind::SigmaMax:
      return sigma_max_generic(t, fix_tol);
    case StepPolicy::Kind::SigmaSpecialized: {
      if (std::holds_alternative<Hyperplane>(u.stage(0))) return sigma_kaczmarz(u, t, fix_tol);
      if (std::holds_alternative<HalfSpace>(u.stage(0))) return sigma_halfspace(u, t, fix_tol);
      if (std::holds_alternative<ConvexFunctional>(u.stage(0))) return sigma_subgrad(u, t, fix_tol);
      throw UsageError("apply_policy: no specialized step size for this operator list");
    }
    case StepPolicy::Kind::Clamped:
      return p.alpha * t.increment_sq_sum / t.displacement_sq;
    case StepPolicy::Kind::Floored: {
      const double m = static_cast<double>(t.size());
      const double floor = (m + 1.0) / (2.0 * m);
      const double s = sigma_max_generic(t, fix_tol);
      return s > floor ? s : floor;
    }
  }
  throw UsageError("apply_policy: unknown policy");
}

StepResult extrapolated_step(const CyclicOperator& u, const StepPolicy& p, double lambda,
                             const Vector& x, double fix_tol) {
  if (!(lambda > 0.0 && lambda < 2.0))
    throw UsageError("extrapolated_step: lambda must lie in (0,2)");
  SweepTrace t = sweep(u, x);
  if (sweep_fixed(t, fix_tol)) return {x, std::move(t), 1.0};

  const double sigma = apply_policy(p, u, t, fix_tol);
  const double scale = lambda * sigma;
  Vector next;
  if (scale == 1.0) {
    next = t.end();
  } else {
    next.resize(x.size());
    const Vector& ux = t.end();
    for (std::size_t i = 0; i < x.size(); ++i) next[i] = x[i] + scale * (ux[i] - x[i]);
  }
  return {std::move(next), std::move(t), sigma};
}

}  // namespace cutters
