// SPDX-License-Identifier: Apache-2.0

#include "cutters/problem.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cutters/rng.hpp"

namespace cutters {

namespace {

constexpr double kWitnessTol = 1e-9;

double parse_double(const std::string& tok, int line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || end != tok.c_str() + tok.size())
    throw ParseError(line_no, "bad number '" + tok + "'");
  if (!std::isfinite(v)) throw ParseError(line_no, "non-finite number '" + tok + "'");
  return v;
}

std::vector<double> parse_doubles(std::istringstream& ls, int count, int line_no,
                                  const char* what) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(count));
  std::string tok;
  while (ls >> tok) vals.push_back(parse_double(tok, line_no));
  if (static_cast<int>(vals.size()) != count)
    throw ParseError(line_no, std::string(what) + ": expected " + std::to_string(count) +
                                  " numbers, got " + std::to_string(vals.size()));
  return vals;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* type_keyword(Constraint::Type t) {
  switch (t) {
    case Constraint::Type::Equation: return "eq";
    case Constraint::Type::Inequality: return "ineq";
    case Constraint::Type::Affine: return "affine";
    case Constraint::Type::Ball: return "ball";
  }
  return "?";
}

/// Signed feasibility residual at w; <= 0 means satisfied (equations report
/// the absolute residual minus its scaled tolerance allowance).
double witness_violation(const Constraint& c, const Vector& w) {
  switch (c.type) {
    case Constraint::Type::Equation:
      return std::fabs(dot(c.a, w) - c.b) - kWitnessTol * std::fabs(c.b);
    case Constraint::Type::Inequality:
    case Constraint::Type::Affine:
      return dot(c.a, w) - c.b;
    case Constraint::Type::Ball:
      return dist_sq(w, c.a) - c.b * c.b;
  }
  return 0.0;
}

Vector random_direction(Rng& rng, int dim) {
  Vector v(static_cast<std::size_t>(dim));
  for (;;) {
    for (auto& x : v) x = rng.gaussian();
    const double n = norm(v);
    if (n > 1e-9) {
      for (auto& x : v) x /= n;
      return v;
    }
  }
}

/// Direction for one row: independent at conditioning 0, pulled against a
/// shared direction (random sign) as conditioning approaches 1.
Vector row_direction(Rng& rng, const Vector& base, double conditioning) {
  const int dim = static_cast<int>(base.size());
  for (;;) {
    const Vector v = random_direction(rng, dim);
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    Vector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      w[i] = (1.0 - conditioning) * v[i] + conditioning * sign * base[i];
    const double n = norm(w);
    if (n > 1e-6) {
      for (auto& x : w) x /= n;
      return w;
    }
  }
}

}  // namespace

ProblemKind Problem::kind() const {
  bool eq = false, ineq = false, cvx = false;
  for (const Constraint& c : constraints) {
    switch (c.type) {
      case Constraint::Type::Equation: eq = true; break;
      case Constraint::Type::Inequality: ineq = true; break;
      case Constraint::Type::Affine:
      case Constraint::Type::Ball: cvx = true; break;
    }
  }
  if (eq && !ineq && !cvx) return ProblemKind::LinearEq;
  if (ineq && !eq && !cvx) return ProblemKind::LinearIneq;
  if (cvx && !eq && !ineq) return ProblemKind::ConvexIneq;
  return ProblemKind::Mixed;
}

void validate_problem(const Problem& p) {
  if (p.dim < 1) throw ValidationError("problem: dim must be at least 1");
  if (p.constraints.empty()) throw ValidationError("problem: no constraints");
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const Constraint& c = p.constraints[i];
    const std::string where = "constraint " + std::to_string(i + 1);
    if (static_cast<int>(c.a.size()) != p.dim)
      throw ValidationError(where + ": wrong dimension");
    if (!all_finite(c.a) || !std::isfinite(c.b))
      throw ValidationError(where + ": non-finite data");
    if (c.type == Constraint::Type::Ball) {
      if (c.b < 0.0) throw ValidationError(where + ": negative radius");
    } else if (norm_sq(c.a) <= 0.0) {
      throw ValidationError(where + ": zero row");
    }
  }
  if (p.witness) {
    const Vector& w = *p.witness;
    if (static_cast<int>(w.size()) != p.dim)
      throw ValidationError("witness: wrong dimension");
    if (!all_finite(w)) throw ValidationError("witness: non-finite coordinates");
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
      if (witness_violation(p.constraints[i], w) > kWitnessTol)
        throw ValidationError("witness violates constraint " + std::to_string(i + 1));
  }
}

Problem parse_problem(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  Problem p;
  bool have_dim = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;

    if (keyword == "dim") {
      if (have_dim) throw ParseError(line_no, "duplicate dim line");
      std::string tok, extra;
      if (!(ls >> tok)) throw ParseError(line_no, "dim: missing value");
      if (ls >> extra) throw ParseError(line_no, "dim: trailing tokens");
      const double v = parse_double(tok, line_no);
      if (v != std::floor(v) || v < 1.0 || v > 1e6)
        throw ParseError(line_no, "dim: expected a positive integer");
      p.dim = static_cast<int>(v);
      have_dim = true;
      continue;
    }
    if (!have_dim) throw ParseError(line_no, "dim must come before '" + keyword + "'");

    if (keyword == "eq" || keyword == "ineq" || keyword == "affine") {
      auto vals = parse_doubles(ls, p.dim + 1, line_no, keyword.c_str());
      Constraint c;
      c.type = keyword == "eq"     ? Constraint::Type::Equation
               : keyword == "ineq" ? Constraint::Type::Inequality
                                   : Constraint::Type::Affine;
      c.b = vals.back();
      vals.pop_back();
      c.a = std::move(vals);
      if (norm_sq(c.a) <= 0.0) throw ValidationError("line " + std::to_string(line_no) + ": zero row");
      p.constraints.push_back(std::move(c));
    } else if (keyword == "ball") {
      auto vals = parse_doubles(ls, p.dim + 1, line_no, "ball");
      Constraint c;
      c.type = Constraint::Type::Ball;
      c.b = vals.back();
      vals.pop_back();
      c.a = std::move(vals);
      if (c.b < 0.0)
        throw ValidationError("line " + std::to_string(line_no) + ": negative radius");
      p.constraints.push_back(std::move(c));
    } else if (keyword == "witness") {
      if (p.witness) throw ParseError(line_no, "duplicate witness line");
      p.witness = parse_doubles(ls, p.dim, line_no, "witness");
    } else {
      throw ParseError(line_no, "unknown keyword '" + keyword + "'");
    }
  }
  if (!have_dim) throw ParseError(line_no ? line_no : 1, "missing dim line");
  validate_problem(p);
  return p;
}

std::string serialize_problem(const Problem& p) {
  validate_problem(p);
  std::string out = "dim " + std::to_string(p.dim) + "\n";
  for (const Constraint& c : p.constraints) {
    out += type_keyword(c.type);
    for (double v : c.a) {
      out += ' ';
      out += fmt17(v);
    }
    out += ' ';
    out += fmt17(c.b);
    out += '\n';
  }
  if (p.witness) {
    out += "witness";
    for (double v : *p.witness) {
      out += ' ';
      out += fmt17(v);
    }
    out += '\n';
  }
  return out;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

void save_problem(const Problem& p, const std::string& path) {
  const std::string text = serialize_problem(p);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

Cutter make_cutter(const Constraint& c) {
  switch (c.type) {
    case Constraint::Type::Equation: return Hyperplane(c.a, c.b);
    case Constraint::Type::Inequality: return HalfSpace(c.a, c.b);
    case Constraint::Type::Affine: return ConvexFunctional::affine(c.a, c.b);
    case Constraint::Type::Ball: return ConvexFunctional::ball(c.a, c.b);
  }
  throw UsageError("make_cutter: unknown constraint type");
}

CyclicOperator make_cyclic(const Problem& p) {
  validate_problem(p);
  std::vector<Cutter> stages;
  stages.reserve(p.constraints.size());
  for (const Constraint& c : p.constraints) stages.push_back(make_cutter(c));
  return CyclicOperator(std::move(stages));
}

Problem generate(const GeneratorSpec& s) {
  if (s.dim < 1) throw UsageError("generate: dim must be at least 1");
  if (s.m < 1) throw UsageError("generate: m must be at least 1");
  if (!(s.conditioning >= 0.0 && s.conditioning < 1.0))
    throw UsageError("generate: conditioning must lie in [0,1)");

  Rng rng(s.seed);
  Vector z(static_cast<std::size_t>(s.dim));
  for (auto& v : z) v = rng.uniform(-1.0, 1.0);
  const Vector base = random_direction(rng, s.dim);

  Problem p;
  p.dim = s.dim;
  p.constraints.reserve(static_cast<std::size_t>(s.m));
  for (int i = 0; i < s.m; ++i) {
    Constraint::Type type;
    switch (s.kind) {
      case ProblemKind::LinearEq: type = Constraint::Type::Equation; break;
      case ProblemKind::LinearIneq: type = Constraint::Type::Inequality; break;
      case ProblemKind::ConvexIneq: type = Constraint::Type::Ball; break;
      case ProblemKind::Mixed: {
        constexpr Constraint::Type cycle[4] = {
            Constraint::Type::Equation, Constraint::Type::Inequality, Constraint::Type::Ball,
            Constraint::Type::Affine};
        type = cycle[i % 4];
        break;
      }
      default: throw UsageError("generate: unknown problem kind");
    }

    Constraint c;
    c.type = type;
    if (type == Constraint::Type::Ball) {
      Vector center(z.size());
      for (std::size_t j = 0; j < z.size(); ++j) center[j] = z[j] + rng.uniform(-1.0, 1.0);
      const double r = dist(z, center) * (1.0 + rng.uniform(0.0, 0.5)) + 0.05;
      c.a = std::move(center);
      c.b = r;
    } else {
      Vector a = row_direction(rng, base, s.conditioning);
      const double scale = rng.uniform(0.5, 2.0);
      for (auto& v : a) v *= scale;
      double b = dot(a, z);
      if (type != Constraint::Type::Equation) b += rng.uniform(0.0, 0.3);
      c.a = std::move(a);
      c.b = b;
    }
    p.constraints.push_back(std::move(c));
  }
  p.witness = std::move(z);
  validate_problem(p);
  return p;
}

const char* kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::LinearEq: return "eq";
    case ProblemKind::LinearIneq: return "ineq";
    case ProblemKind::ConvexIneq: return "convex";
    case ProblemKind::Mixed: return "mixed";
  }
  return "?";
}

std::optional<ProblemKind> kind_from_name(std::string_view name) {
  if (name == "eq") return ProblemKind::LinearEq;
  if (name == "ineq") return ProblemKind::LinearIneq;
  if (name == "convex") return ProblemKind::ConvexIneq;
  if (name == "mixed") return ProblemKind::Mixed;
  return std::nullopt;
}

}  // namespace cutters
