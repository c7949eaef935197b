// SPDX-License-Identifier: Apache-2.0

#include "cutters/solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cutters {

namespace {

void validate_config(const SolveConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw UsageError("solve: epsilon must lie in (0,1)");
  if (!(cfg.tol_residual >= 0.0) || !std::isfinite(cfg.tol_residual))
    throw UsageError("solve: tol_residual must be finite and nonnegative");
  if (cfg.max_iters < 1) throw UsageError("solve: max_iters must be positive");
  if (!(cfg.fix_tol >= 0.0)) throw UsageError("solve: fix_tol must be nonnegative");
  if (cfg.lambdas.empty()) throw UsageError("solve: empty lambda schedule");
  for (double l : cfg.lambdas)
    if (!(l > 0.0 && l < 2.0)) throw UsageError("solve: lambda schedule out of (0,2)");
  if (cfg.policy.kind == StepPolicy::Kind::Clamped &&
      !(cfg.policy.alpha > 0.0 && cfg.policy.alpha <= 0.5))
    throw UsageError("solve: clamp alpha must lie in (0, 1/2]");
}

}  // namespace

double lambda_at(const SolveConfig& cfg, long k) {
  if (k < 0) throw UsageError("lambda_at: negative iteration index");
  if (cfg.lambdas.empty()) throw UsageError("lambda_at: empty lambda schedule");
  const std::size_t idx =
      std::min(static_cast<std::size_t>(k), cfg.lambdas.size() - 1);
  return std::clamp(cfg.lambdas[idx], cfg.epsilon, 2.0 - cfg.epsilon);
}

SolveResult solve(const CyclicOperator& u, const Vector& x0, const SolveConfig& cfg,
                  const std::optional<Vector>& z_ref) {
  validate_config(cfg);
  if (static_cast<int>(x0.size()) != u.dim()) throw UsageError("solve: x0 dimension mismatch");
  if (!all_finite(x0)) throw UsageError("solve: x0 has non-finite coordinates");
  if (z_ref) {
    if (static_cast<int>(z_ref->size()) != u.dim())
      throw UsageError("solve: z_ref dimension mismatch");
    for (int i = 0; i < u.size(); ++i)
      if (!contains(u.stage(i), *z_ref))
        throw UsageError("solve: z_ref fails the membership test of stage " + std::to_string(i));
  }

  SolveResult out;
  Vector x = x0;
  int stall = 0;
  for (long k = 0;; ++k) {
    const double lam = lambda_at(cfg, k);
    StepResult step = extrapolated_step(u, cfg.policy, lam, x, cfg.fix_tol);
    const double residual = std::sqrt(step.trace.displacement_sq);

    IterationRecord rec;
    rec.k = k;
    rec.residual = residual;
    rec.sigma = step.sigma;
    rec.lambda = lam;
    if (z_ref) rec.dist_to_ref = dist(x, *z_ref);
    rec.stage_sq_sum = step.trace.increment_sq_sum;
    out.trace.push_back(std::move(rec));

    if (residual <= cfg.tol_residual) {
      out.status = SolveStatus::Converged;
      break;
    }
    if (k >= cfg.max_iters) {
      out.status = SolveStatus::MaxIters;
      break;
    }
    if (step.next == x) {
      if (++stall >= kStallLimit) {
        out.status = SolveStatus::Stalled;
        break;
      }
    } else {
      stall = 0;
    }
    x = std::move(step.next);
  }
  out.final_point = std::move(x);
  return out;
}

double fejer_certificate(const Vector& x, const Vector& x_next, const Vector& z, double sigma,
                         double lambda, double residual) {
  if (x.size() != x_next.size() || x.size() != z.size())
    throw UsageError("fejer_certificate: dimension mismatch");
  return dist_sq(x, z) - dist_sq(x_next, z) -
         lambda * (2.0 - lambda) * sigma * sigma * residual * residual;
}

}  // namespace cutters
