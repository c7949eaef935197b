// SPDX-License-Identifier: Apache-2.0

#ifndef CUTTERS_CYCLIC_HPP
#define CUTTERS_CYCLIC_HPP

#include <vector>

#include "cutters/operators.hpp"

namespace cutters {

/// Ordered composition U = U_m ... U_1 of cutters over one ambient space.
/// The composition order is the storage order: stage(0) acts first.
class CyclicOperator {
 public:
  explicit CyclicOperator(std::vector<Cutter> stages);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(stages_.size()); }
  const Cutter& stage(int i) const { return stages_[static_cast<std::size_t>(i)]; }
  const std::vector<Cutter>& stages() const { return stages_; }

  /// One full sweep, final point only.
  Vector apply(const Vector& x) const;

 private:
  std::vector<Cutter> stages_;
  int dim_;
};

enum class StageKind { Hyperplane, HalfSpace, Subgradient, Custom };

/// Scalars captured while a stage runs, so the specialized step-size forms
/// need no further operator applications. Rows record the residual
/// <a,u>-b and ||a||^2; subgradient stages record c(u) and ||g(u)||^2.
/// Custom stages record NaNs.
struct StageInfo {
  StageKind kind;
  double residual;
  double grad_sq;
};

/// One pass u^0, ..., u^m through the composition, with the increments
/// y^i = u^i - u^{i-1} and per-stage scalars.
struct SweepTrace {
  std::vector<Vector> points;      // u^0 .. u^m
  std::vector<Vector> increments;  // y^1 .. y^m
  std::vector<StageInfo> stages;
  double displacement_sq = 0.0;    // ||u^m - u^0||^2
  double increment_sq_sum = 0.0;   // sum_i ||y^i||^2

  const Vector& start() const { return points.front(); }
  const Vector& end() const { return points.back(); }
  int size() const { return static_cast<int>(increments.size()); }

  /// True when some subgradient stage had positive value but zero
  /// subgradient, i.e. the stage could not move.
  bool subgradient_stalled() const;
};

SweepTrace sweep(const CyclicOperator& u, const Vector& x);

/// ||u^m - u^0|| <= fix_tol (1 + ||u^0||): the sweep start counts as a fixed
/// point of the composition.
bool sweep_fixed(const SweepTrace& t, double fix_tol = kFixTol);

/// Extrapolated step size
///   sigma_max(x) = (||Ux-x||^2 + sum_i ||y^i||^2) / (2 ||Ux-x||^2),
/// the numerically stable form of the largest step the separation analysis
/// admits. Requires a non-fixed sweep; >= 1/(2m) always.
double sigma_max_generic(const SweepTrace& t, double fix_tol = kFixTol);

/// Row-residual form for compositions of hyperplane projections:
///   [sum_i (b_i - <a_i,x>)(b_i - <a_i,u^{i-1}>)/||a_i||^2] / ||Ux-x||^2.
/// Agrees with sigma_max_generic; every stage must be a Hyperplane.
double sigma_kaczmarz(const CyclicOperator& u, const SweepTrace& t, double fix_tol = kFixTol);

/// Row-residual form for compositions of half-space projections:
///   [sum_i (<a_i,x> - b_i)(<a_i,u^{i-1}> - b_i)_+ /||a_i||^2] / ||Ux-x||^2.
/// Never exceeds sigma_max_generic; every stage must be a HalfSpace.
double sigma_halfspace(const CyclicOperator& u, const SweepTrace& t, double fix_tol = kFixTol);

/// Subgradient form for compositions of subgradient projectors:
///   -[sum_i (c_i(u^{i-1}))_+ /||g_i(u^{i-1})||^2 <u^i - x, g_i(u^{i-1})>] / ||Ux-x||^2.
/// Stages with vanishing subgradient contribute zero. Agrees with
/// sigma_max_generic; every stage must be a ConvexFunctional.
double sigma_subgrad(const CyclicOperator& u, const SweepTrace& t, double fix_tol = kFixTol);

/// How the step size sigma(x) is chosen each iteration.
///   Unit             sigma = 1, the plain cyclic sweep.
///   SigmaMax         sigma_max_generic.
///   SigmaSpecialized the row/subgradient form matching a homogeneous
///                    operator list.
///   Clamped          alpha * sum_i ||y^i||^2 / ||Ux-x||^2 with
///                    alpha in (0, 1/2], the lower envelope of the
///                    admissible band.
///   Floored          max((m+1)/(2m), sigma_max_generic).
struct StepPolicy {
  enum class Kind { Unit, SigmaMax, SigmaSpecialized, Clamped, Floored };

  Kind kind = Kind::SigmaMax;
  double alpha = 0.5;  // Clamped only

  static StepPolicy unit() { return {Kind::Unit, 0.5}; }
  static StepPolicy sigma_max() { return {Kind::SigmaMax, 0.5}; }
  static StepPolicy sigma_specialized() { return {Kind::SigmaSpecialized, 0.5}; }
  static StepPolicy clamped(double alpha) { return {Kind::Clamped, alpha}; }
  static StepPolicy floored() { return {Kind::Floored, 0.5}; }
};

/// Evaluate the policy on a finished sweep. Returns 1 when the sweep is
/// fixed (no displacement to extrapolate along).
double apply_policy(const StepPolicy& p, const CyclicOperator& u, const SweepTrace& t,
                    double fix_tol = kFixTol);

struct StepResult {
  Vector next;
  SweepTrace trace;
  double sigma;
};

/// One iteration x -> x + lambda sigma(x) (Ux - x). lambda in (0,2). At a
/// fixed point the input is returned unchanged with sigma = 1. When
/// lambda*sigma == 1 the result is the sweep end point exactly, so the Unit
/// policy with lambda = 1 reproduces the plain cyclic iteration bit for bit.
StepResult extrapolated_step(const CyclicOperator& u, const StepPolicy& p, double lambda,
                             const Vector& x, double fix_tol = kFixTol);

}  // namespace cutters

#endif
