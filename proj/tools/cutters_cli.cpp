// SPDX-License-Identifier: Apache-2.0

// Command line front end. Talks to the library exclusively through the C
// interface in cutters.h.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cutters.h"

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMaxIters = 2;
constexpr int kExitStalled = 3;

struct PolicyChoice {
  cutters_policy policy = CUTTERS_POLICY_SIGMA_MAX;
  double clamp_alpha = 0.5;
  std::string name = "sigma-max";
};

bool parse_policy(const std::string& text, PolicyChoice* out) {
  out->name = text;
  if (text == "unit") {
    out->policy = CUTTERS_POLICY_UNIT;
    return true;
  }
  if (text == "sigma-max") {
    out->policy = CUTTERS_POLICY_SIGMA_MAX;
    return true;
  }
  if (text == "sigma-specialized") {
    out->policy = CUTTERS_POLICY_SIGMA_SPECIALIZED;
    return true;
  }
  if (text == "floored") {
    out->policy = CUTTERS_POLICY_FLOORED;
    return true;
  }
  if (text.rfind("clamped:", 0) == 0) {
    char* end = nullptr;
    const std::string arg = text.substr(8);
    const double alpha = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size()) return false;
    out->policy = CUTTERS_POLICY_CLAMPED;
    out->clamp_alpha = alpha;
    return true;
  }
  return false;
}

bool parse_point(const std::string& text, std::vector<double>* out) {
  out->clear();
  std::string cur;
  auto flush = [&]() -> bool {
    if (cur.empty()) return true;
    char* end = nullptr;
    const double v = std::strtod(cur.c_str(), &end);
    if (end != cur.c_str() + cur.size() || !std::isfinite(v)) return false;
    out->push_back(v);
    cur.clear();
    return true;
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!flush()) return false;
    } else {
      cur.push_back(ch);
    }
  }
  if (!flush()) return false;
  return !out->empty();
}

int fail(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return kExitUsage;
}

int fail_api(const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, cutters_last_error());
  return kExitUsage;
}

const char* status_name(cutters_solve_status s) {
  switch (s) {
    case CUTTERS_SOLVE_CONVERGED: return "converged";
    case CUTTERS_SOLVE_MAX_ITERS: return "max-iters";
    case CUTTERS_SOLVE_STALLED: return "stalled";
  }
  return "?";
}

int status_exit_code(cutters_solve_status s) {
  switch (s) {
    case CUTTERS_SOLVE_CONVERGED: return kExitConverged;
    case CUTTERS_SOLVE_MAX_ITERS: return kExitMaxIters;
    case CUTTERS_SOLVE_STALLED: return kExitStalled;
  }
  return kExitUsage;
}

bool write_trace_csv(const cutters_result* result, const std::string& path, std::string* err) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) {
    *err = "cannot open '" + path + "' for writing";
    return false;
  }
  std::fprintf(f, "iter,residual,sigma,lambda,dist_to_ref,stage_sq_sum\n");
  const long n = cutters_result_records(result);
  for (long i = 0; i < n; ++i) {
    cutters_record rec;
    if (cutters_result_record(result, i, &rec) != CUTTERS_OK) {
      std::fclose(f);
      *err = cutters_last_error();
      return false;
    }
    std::fprintf(f, "%ld,%.17g,%.17g,%.17g,", rec.iter, rec.residual, rec.sigma, rec.lambda);
    if (!std::isnan(rec.dist_to_ref)) std::fprintf(f, "%.17g", rec.dist_to_ref);
    std::fprintf(f, ",%.17g\n", rec.stage_sq_sum);
  }
  std::fclose(f);
  return true;
}

struct SolveArgs {
  std::string problem_path;
  std::string policy_text = "sigma-max";
  double lambda = 1.0;
  double epsilon = 1e-2;
  double tol = 1e-8;
  long max_iters = 10000;
  std::string trace_path;
  bool use_witness = false;
  std::string x0_text;
};

/// Fills opts/x0 from flags; returns nonzero exit code on bad input.
int prepare_options(const SolveArgs& args, int dim, cutters_options* opts,
                    std::vector<double>* x0) {
  PolicyChoice policy;
  if (!parse_policy(args.policy_text, &policy))
    return fail("unknown policy '" + args.policy_text +
                "' (expected unit|sigma-max|sigma-specialized|clamped:<alpha>|floored)");
  cutters_options_init(opts);
  opts->policy = policy.policy;
  opts->clamp_alpha = policy.clamp_alpha;
  opts->lambda = args.lambda;
  opts->epsilon = args.epsilon;
  opts->tol_residual = args.tol;
  opts->max_iters = args.max_iters;
  opts->use_witness_ref = args.use_witness ? 1 : 0;

  x0->assign(static_cast<std::size_t>(dim), 0.0);
  if (!args.x0_text.empty()) {
    if (!parse_point(args.x0_text, x0)) return fail("bad --x0 value '" + args.x0_text + "'");
    if (static_cast<int>(x0->size()) != dim)
      return fail("--x0 has " + std::to_string(x0->size()) + " coordinates, problem dimension is " +
                  std::to_string(dim));
  }
  return -1;
}

int run_solve(const SolveArgs& args) {
  cutters_problem* problem = nullptr;
  if (cutters_problem_load(args.problem_path.c_str(), &problem) != CUTTERS_OK)
    return fail_api("cannot load problem");

  cutters_options opts;
  std::vector<double> x0;
  if (int rc = prepare_options(args, cutters_problem_dim(problem), &opts, &x0); rc >= 0) {
    cutters_problem_free(problem);
    return rc;
  }

  cutters_result* result = nullptr;
  if (cutters_solve(problem, x0.data(), &opts, &result) != CUTTERS_OK) {
    cutters_problem_free(problem);
    return fail_api("solve failed");
  }

  if (!args.trace_path.empty()) {
    std::string err;
    if (!write_trace_csv(result, args.trace_path, &err)) {
      cutters_result_free(result);
      cutters_problem_free(problem);
      return fail(err);
    }
  }

  cutters_record last;
  cutters_result_record(result, cutters_result_records(result) - 1, &last);
  const cutters_solve_status status = cutters_result_status(result);
  int dim = 0;
  const double* point = cutters_result_point(result, &dim);

  std::printf("status: %s\n", status_name(status));
  std::printf("iterations: %ld\n", cutters_result_iterations(result));
  std::printf("residual: %.17g\n", last.residual);
  std::printf("point:");
  for (int i = 0; i < dim; ++i) std::printf(" %.17g", point[i]);
  std::printf("\n");

  const int code = status_exit_code(status);
  cutters_result_free(result);
  cutters_problem_free(problem);
  return code;
}

struct GenArgs {
  std::uint64_t seed = 0;
  int dim = 2;
  int m = 2;
  std::string kind = "eq";
  double conditioning = 0.0;
  std::string out_path;
};

int run_gen(const GenArgs& args) {
  cutters_problem* problem = nullptr;
  if (cutters_problem_generate(args.seed, args.dim, args.m, args.kind.c_str(), args.conditioning,
                               &problem) != CUTTERS_OK)
    return fail_api("generate failed");
  const cutters_status rc = cutters_problem_save(problem, args.out_path.c_str());
  cutters_problem_free(problem);
  if (rc != CUTTERS_OK) return fail_api("cannot write problem");
  return 0;
}

struct BenchArgs {
  SolveArgs solve;
  bool have_problem = false;
  GenArgs gen;
  bool have_gen = false;
};

std::string trace_path_for(const std::string& base, const std::string& policy) {
  std::string stem = base;
  const std::string ext = ".csv";
  if (stem.size() >= ext.size() && stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0)
    stem.resize(stem.size() - ext.size());
  return stem + "." + policy + ".csv";
}

int run_bench(const BenchArgs& args) {
  cutters_problem* problem = nullptr;
  if (args.have_problem) {
    if (cutters_problem_load(args.solve.problem_path.c_str(), &problem) != CUTTERS_OK)
      return fail_api("cannot load problem");
  } else {
    if (cutters_problem_generate(args.gen.seed, args.gen.dim, args.gen.m, args.gen.kind.c_str(),
                                 args.gen.conditioning, &problem) != CUTTERS_OK)
      return fail_api("generate failed");
  }

  std::vector<std::string> policies = {"unit", "sigma-max", "floored"};
  if (cutters_problem_homogeneous(problem)) policies.insert(policies.begin() + 2, "sigma-specialized");

  const int m = cutters_problem_count(problem);
  std::printf("%-18s %-10s %11s %15s %12s\n", "policy", "status", "iterations", "residual",
              "applications");
  int exit_code = 0;
  for (const std::string& name : policies) {
    SolveArgs run = args.solve;
    run.policy_text = name;

    cutters_options opts;
    std::vector<double> x0;
    if (int rc = prepare_options(run, cutters_problem_dim(problem), &opts, &x0); rc >= 0) {
      cutters_problem_free(problem);
      return rc;
    }

    cutters_result* result = nullptr;
    if (cutters_solve(problem, x0.data(), &opts, &result) != CUTTERS_OK) {
      cutters_problem_free(problem);
      return fail_api("solve failed");
    }

    if (!args.solve.trace_path.empty()) {
      std::string err;
      if (!write_trace_csv(result, trace_path_for(args.solve.trace_path, name), &err)) {
        cutters_result_free(result);
        cutters_problem_free(problem);
        return fail(err);
      }
    }

    cutters_record last;
    cutters_result_record(result, cutters_result_records(result) - 1, &last);
    const cutters_solve_status status = cutters_result_status(result);
    // One sweep per record; each sweep applies every stage once.
    const long applications = cutters_result_records(result) * m;
    std::printf("%-18s %-10s %11ld %15.6e %12ld\n", name.c_str(), status_name(status),
                cutters_result_iterations(result), last.residual, applications);

    const int code = status_exit_code(status);
    if (code > exit_code) exit_code = code;
    cutters_result_free(result);
  }
  cutters_problem_free(problem);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex feasibility via cyclic cutter compositions with extrapolated steps"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Run the solver on a problem file");
  solve->add_option("--problem", solve_args.problem_path, "Problem file")->required();
  solve->add_option("--policy", solve_args.policy_text,
                    "unit|sigma-max|sigma-specialized|clamped:<alpha>|floored");
  solve->add_option("--lambda", solve_args.lambda, "Relaxation parameter in (0,2)");
  solve->add_option("--epsilon", solve_args.epsilon, "Band margin for lambda");
  solve->add_option("--tol", solve_args.tol, "Residual tolerance");
  solve->add_option("--max-iters", solve_args.max_iters, "Iteration budget");
  solve->add_option("--trace", solve_args.trace_path, "Write per-iteration CSV here");
  solve->add_flag("--use-witness", solve_args.use_witness,
                  "Record distance to the file's witness");
  solve->add_option("--x0", solve_args.x0_text, "Start point, comma separated (default zeros)");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Compare step policies on one problem");
  bench->add_option("--problem", bench_args.solve.problem_path, "Problem file");
  bench->add_option("--seed", bench_args.gen.seed, "Generator seed");
  bench->add_option("--dim", bench_args.gen.dim, "Generator dimension");
  bench->add_option("--m", bench_args.gen.m, "Generator constraint count");
  bench->add_option("--kind", bench_args.gen.kind, "eq|ineq|convex");
  bench->add_option("--conditioning", bench_args.gen.conditioning, "Row conditioning in [0,1)");
  bench->add_option("--lambda", bench_args.solve.lambda, "Relaxation parameter in (0,2)");
  bench->add_option("--epsilon", bench_args.solve.epsilon, "Band margin for lambda");
  bench->add_option("--tol", bench_args.solve.tol, "Residual tolerance");
  bench->add_option("--max-iters", bench_args.solve.max_iters, "Iteration budget");
  bench->add_option("--trace", bench_args.solve.trace_path, "Per-policy CSV path stem");
  bench->add_flag("--use-witness", bench_args.solve.use_witness,
                  "Record distance to the witness");
  bench->add_option("--x0", bench_args.solve.x0_text, "Start point, comma separated");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random feasible problem");
  gen->add_option("--seed", gen_args.seed, "Seed");
  gen->add_option("--dim", gen_args.dim, "Dimension");
  gen->add_option("--m", gen_args.m, "Constraint count");
  gen->add_option("--kind", gen_args.kind, "eq|ineq|convex");
  gen->add_option("--conditioning", gen_args.conditioning, "Row conditioning in [0,1)");
  gen->add_option("--out", gen_args.out_path, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  if (solve->parsed()) return run_solve(solve_args);
  if (gen->parsed()) {
    if (gen_args.kind != "eq" && gen_args.kind != "ineq" && gen_args.kind != "convex")
      return fail("unknown kind '" + gen_args.kind + "' (expected eq|ineq|convex)");
    return run_gen(gen_args);
  }
  if (bench->parsed()) {
    bench_args.have_problem = !bench_args.solve.problem_path.empty();
    bench_args.have_gen = !bench_args.have_problem;
    if (!bench_args.have_problem &&
        (bench_args.gen.kind != "eq" && bench_args.gen.kind != "ineq" &&
         bench_args.gen.kind != "convex"))
      return fail("unknown kind '" + bench_args.gen.kind + "' (expected eq|ineq|convex)");
    return run_bench(bench_args);
  }
  return kExitUsage;
}
