// SPDX-License-Identifier: Apache-2.0

#ifndef CUTTERS_PROBLEM_HPP
#define CUTTERS_PROBLEM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cutters/cyclic.hpp"

namespace cutters {

/// One constraint as written in a problem file.
///   Equation    eq a_1 .. a_n b       <a,x> =  b   -> hyperplane projection
///   Inequality  ineq a_1 .. a_n b     <a,x> <= b   -> half-space projection
///   Affine      affine a_1 .. a_n b   <a,x>-b <= 0 -> subgradient projector
///   Ball        ball c_1 .. c_n r     ||x-c||^2 - r^2 <= 0
///                                                  -> subgradient projector
struct Constraint {
  enum class Type { Equation, Inequality, Affine, Ball };

  Type type;
  Vector a;  // row, or the ball center
  double b;  // offset, or the ball radius
};

enum class ProblemKind { LinearEq, LinearIneq, ConvexIneq, Mixed };

struct Problem {
  int dim = 0;
  std::vector<Constraint> constraints;
  std::optional<Vector> witness;

  int size() const { return static_cast<int>(constraints.size()); }
  ProblemKind kind() const;
  /// All stages map to one operator family, so the specialized step-size
  /// forms apply.
  bool homogeneous() const { return kind() != ProblemKind::Mixed; }
};

/// Problem file format: UTF-8, line oriented, '#' starts a comment, blank
/// lines ignored. The first content line is "dim n"; constraint lines follow
/// in cyclic order; an optional "witness z_1 .. z_n" names a feasible point.
Problem parse_problem(const std::string& text);

/// Inverse of parse_problem. Scalars are printed with 17 significant digits,
/// so parse(serialize(p)) reproduces p exactly.
std::string serialize_problem(const Problem& p);

Problem load_problem(const std::string& path);
void save_problem(const Problem& p, const std::string& path);

/// Structural checks shared by parse and serialize: positive dimension,
/// at least one constraint, finite data, non-zero rows, witness feasible
/// within 1e-9 (|<a,x>-b| <= 1e-9 (1+|b|) for equations, <a,x> <= b + 1e-9
/// for inequalities, c(x) <= 1e-9 for convex constraints).
void validate_problem(const Problem& p);

Cutter make_cutter(const Constraint& c);
CyclicOperator make_cyclic(const Problem& p);

struct GeneratorSpec {
  std::uint64_t seed = 0;
  int dim = 2;
  int m = 2;
  ProblemKind kind = ProblemKind::LinearEq;
  /// Row geometry: 0 draws independent directions, values toward 1 pull all
  /// rows against one shared direction. Must lie in [0,1).
  double conditioning = 0.0;
};

/// Deterministic instance generator. A witness is drawn first and every
/// constraint is built to hold at it, so generated problems are consistent
/// and carry their witness. Equal specs yield byte-identical files.
Problem generate(const GeneratorSpec& spec);

const char* kind_name(ProblemKind k);  // "eq" | "ineq" | "convex" | "mixed"
std::optional<ProblemKind> kind_from_name(std::string_view name);

}  // namespace cutters

#endif
