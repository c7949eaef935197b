// SPDX-License-Identifier: Apache-2.0

#ifndef CUTTERS_SOLVER_HPP
#define CUTTERS_SOLVER_HPP

#include <optional>
#include <vector>

#include "cutters/cyclic.hpp"

namespace cutters {

/// Iterations with no movement before the run is declared stalled.
inline constexpr int kStallLimit = 50;

struct SolveConfig {
  /// Relaxation schedule. One entry means a constant lambda; a longer list is
  /// read per iteration, holding its last value once exhausted. Entries must
  /// lie in (0,2); lambda_at additionally clamps them into [eps, 2-eps].
  std::vector<double> lambdas = {1.0};
  double epsilon = 1e-2;
  StepPolicy policy = StepPolicy::sigma_max();
  double tol_residual = 1e-8;
  long max_iters = 10000;
  double fix_tol = kFixTol;
};

/// The scheduled lambda_k, clamped into [eps, 2-eps].
double lambda_at(const SolveConfig& cfg, long k);

struct IterationRecord {
  long k = 0;
  double residual = 0.0;  // ||Ux^k - x^k||
  double sigma = 0.0;
  double lambda = 0.0;
  std::optional<double> dist_to_ref;  // ||x^k - z_ref|| when a reference is known
  double stage_sq_sum = 0.0;          // sum_i ||y^i||^2 at x^k
};

enum class SolveStatus { Converged, MaxIters, Stalled };

struct SolveResult {
  Vector final_point;
  SolveStatus status = SolveStatus::MaxIters;
  std::vector<IterationRecord> trace;  // one record per visited iterate, k = 0 first

  long iterations() const { return static_cast<long>(trace.size()) - 1; }
};

/// Iterate x^{k+1} = x^k + lambda_k sigma(x^k) (Ux^k - x^k) until the
/// residual ||Ux^k - x^k|| drops to tol_residual, the iteration budget runs
/// out, or kStallLimit consecutive iterations fail to move the point.
/// A supplied z_ref must pass every stage's membership test; it only feeds
/// the per-record dist_to_ref diagnostics.
SolveResult solve(const CyclicOperator& u, const Vector& x0, const SolveConfig& cfg,
                  const std::optional<Vector>& z_ref = std::nullopt);

/// Per-iteration decrease certificate
///   ||x-z||^2 - ||x_next-z||^2 - lambda (2-lambda) sigma^2 residual^2
/// with residual = ||Ux - x||. Nonnegative (up to roundoff) whenever z is a
/// common point and sigma does not exceed the separation bound, i.e. for the
/// sigma-based policies.
double fejer_certificate(const Vector& x, const Vector& x_next, const Vector& z, double sigma,
                         double lambda, double residual);

}  // namespace cutters

#endif
