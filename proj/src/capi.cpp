// SPDX-License-Identifier: Apache-2.0

#include "cutters.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "cutters/problem.hpp"
#include "cutters/solver.hpp"

struct cutters_problem {
  cutters::Problem impl;
};

struct cutters_result {
  cutters::SolveResult impl;
};

namespace {

thread_local std::string t_error;

cutters_status fail(cutters_status code, const char* what) {
  t_error = what;
  return code;
}

template <typename F>
cutters_status guarded(F&& f) {
  t_error.clear();
  try {
    return f();
  } catch (const cutters::UsageError& e) {
    return fail(CUTTERS_ERR_USAGE, e.what());
  } catch (const cutters::ParseError& e) {
    return fail(CUTTERS_ERR_PARSE, e.what());
  } catch (const cutters::ValidationError& e) {
    return fail(CUTTERS_ERR_VALIDATION, e.what());
  } catch (const cutters::IoError& e) {
    return fail(CUTTERS_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CUTTERS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CUTTERS_ERR_INTERNAL, e.what());
  }
}

cutters_status require(bool ok, const char* what) {
  if (ok) return CUTTERS_OK;
  throw cutters::UsageError(what);
}

}  // namespace

extern "C" {

void cutters_options_init(cutters_options* opts) {
  if (!opts) return;
  opts->policy = CUTTERS_POLICY_SIGMA_MAX;
  opts->clamp_alpha = 0.5;
  opts->lambda = 1.0;
  opts->epsilon = 1e-2;
  opts->tol_residual = 1e-8;
  opts->max_iters = 10000;
  opts->fix_tol = 1e-13;
  opts->use_witness_ref = 0;
}

cutters_status cutters_problem_parse(const char* text, cutters_problem** out) {
  return guarded([&] {
    require(text && out, "cutters_problem_parse: null argument");
    auto* p = new cutters_problem{cutters::parse_problem(text)};
    *out = p;
    return CUTTERS_OK;
  });
}

cutters_status cutters_problem_load(const char* path, cutters_problem** out) {
  return guarded([&] {
    require(path && out, "cutters_problem_load: null argument");
    auto* p = new cutters_problem{cutters::load_problem(path)};
    *out = p;
    return CUTTERS_OK;
  });
}

cutters_status cutters_problem_generate(uint64_t seed, int dim, int m, const char* kind,
                                        double conditioning, cutters_problem** out) {
  return guarded([&] {
    require(kind && out, "cutters_problem_generate: null argument");
    const auto k = cutters::kind_from_name(kind);
    require(k.has_value(), "cutters_problem_generate: unknown kind");
    cutters::GeneratorSpec spec;
    spec.seed = seed;
    spec.dim = dim;
    spec.m = m;
    spec.kind = *k;
    spec.conditioning = conditioning;
    auto* p = new cutters_problem{cutters::generate(spec)};
    *out = p;
    return CUTTERS_OK;
  });
}

cutters_status cutters_problem_save(const cutters_problem* p, const char* path) {
  return guarded([&] {
    require(p && path, "cutters_problem_save: null argument");
    cutters::save_problem(p->impl, path);
    return CUTTERS_OK;
  });
}

cutters_status cutters_problem_serialize(const cutters_problem* p, char** out) {
  return guarded([&] {
    require(p && out, "cutters_problem_serialize: null argument");
    const std::string text = cutters::serialize_problem(p->impl);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return CUTTERS_OK;
  });
}

int cutters_problem_dim(const cutters_problem* p) { return p ? p->impl.dim : 0; }

int cutters_problem_count(const cutters_problem* p) { return p ? p->impl.size() : 0; }

const char* cutters_problem_kind(const cutters_problem* p) {
  return p ? cutters::kind_name(p->impl.kind()) : "?";
}

int cutters_problem_homogeneous(const cutters_problem* p) {
  return p && p->impl.homogeneous() ? 1 : 0;
}

int cutters_problem_has_witness(const cutters_problem* p) {
  return p && p->impl.witness ? 1 : 0;
}

cutters_status cutters_problem_witness(const cutters_problem* p, double* out) {
  return guarded([&] {
    require(p && out, "cutters_problem_witness: null argument");
    require(p->impl.witness.has_value(), "cutters_problem_witness: problem has no witness");
    const cutters::Vector& w = *p->impl.witness;
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i];
    return CUTTERS_OK;
  });
}

void cutters_problem_free(cutters_problem* p) { delete p; }

cutters_status cutters_solve(const cutters_problem* p, const double* x0,
                             const cutters_options* opts, cutters_result** out) {
  return guarded([&] {
    require(p && out, "cutters_solve: null argument");
    cutters_options defaults;
    cutters_options_init(&defaults);
    const cutters_options& o = opts ? *opts : defaults;

    cutters::SolveConfig cfg;
    cfg.lambdas = {o.lambda};
    cfg.epsilon = o.epsilon;
    cfg.tol_residual = o.tol_residual;
    cfg.max_iters = o.max_iters;
    cfg.fix_tol = o.fix_tol;
    switch (o.policy) {
      case CUTTERS_POLICY_UNIT: cfg.policy = cutters::StepPolicy::unit(); break;
      case CUTTERS_POLICY_SIGMA_MAX: cfg.policy = cutters::StepPolicy::sigma_max(); break;
      case CUTTERS_POLICY_SIGMA_SPECIALIZED:
        cfg.policy = cutters::StepPolicy::sigma_specialized();
        break;
      case CUTTERS_POLICY_CLAMPED:
        cfg.policy = cutters::StepPolicy::clamped(o.clamp_alpha);
        break;
      case CUTTERS_POLICY_FLOORED: cfg.policy = cutters::StepPolicy::floored(); break;
      default: throw cutters::UsageError("cutters_solve: unknown policy");
    }

    const cutters::CyclicOperator u = cutters::make_cyclic(p->impl);
    cutters::Vector start(static_cast<std::size_t>(p->impl.dim), 0.0);
    if (x0) start.assign(x0, x0 + p->impl.dim);

    std::optional<cutters::Vector> z_ref;
    if (o.use_witness_ref) {
      require(p->impl.witness.has_value(), "cutters_solve: problem has no witness to reference");
      z_ref = p->impl.witness;
    }

    auto* r = new cutters_result{cutters::solve(u, start, cfg, z_ref)};
    *out = r;
    return CUTTERS_OK;
  });
}

cutters_solve_status cutters_result_status(const cutters_result* r) {
  if (!r) return CUTTERS_SOLVE_MAX_ITERS;
  switch (r->impl.status) {
    case cutters::SolveStatus::Converged: return CUTTERS_SOLVE_CONVERGED;
    case cutters::SolveStatus::MaxIters: return CUTTERS_SOLVE_MAX_ITERS;
    case cutters::SolveStatus::Stalled: return CUTTERS_SOLVE_STALLED;
  }
  return CUTTERS_SOLVE_MAX_ITERS;
}

long cutters_result_iterations(const cutters_result* r) { return r ? r->impl.iterations() : 0; }

const double* cutters_result_point(const cutters_result* r, int* dim) {
  if (!r) {
    if (dim) *dim = 0;
    return nullptr;
  }
  if (dim) *dim = static_cast<int>(r->impl.final_point.size());
  return r->impl.final_point.data();
}

long cutters_result_records(const cutters_result* r) {
  return r ? static_cast<long>(r->impl.trace.size()) : 0;
}

cutters_status cutters_result_record(const cutters_result* r, long index, cutters_record* out) {
  return guarded([&] {
    require(r && out, "cutters_result_record: null argument");
    require(index >= 0 && index < static_cast<long>(r->impl.trace.size()),
            "cutters_result_record: index out of range");
    const cutters::IterationRecord& rec = r->impl.trace[static_cast<std::size_t>(index)];
    out->iter = rec.k;
    out->residual = rec.residual;
    out->sigma = rec.sigma;
    out->lambda = rec.lambda;
    out->dist_to_ref =
        rec.dist_to_ref ? *rec.dist_to_ref : std::numeric_limits<double>::quiet_NaN();
    out->stage_sq_sum = rec.stage_sq_sum;
    return CUTTERS_OK;
  });
}

void cutters_result_free(cutters_result* r) { delete r; }

void cutters_string_free(char* s) { delete[] s; }

const char* cutters_last_error(void) { return t_error.c_str(); }

}  // extern "C"
