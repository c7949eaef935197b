// SPDX-License-Identifier: Apache-2.0

// Black-box checks of the C interface. Everything here goes through the
// exported handles and status codes only; no C++ headers from the library.

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "cutters.h"

namespace {

constexpr const char* kDiagonal =
    "dim 2\n"
    "eq 1 0 0\n"
    "eq 1 -1 0\n"
    "witness 0 0\n";

struct ProblemHandle {
  cutters_problem* p = nullptr;
  ~ProblemHandle() { cutters_problem_free(p); }
};

struct ResultHandle {
  cutters_result* r = nullptr;
  ~ResultHandle() { cutters_result_free(r); }
};

}  // namespace

TEST_CASE("options_init fills the documented defaults") {
  cutters_options o;
  std::memset(&o, 0xff, sizeof(o));
  cutters_options_init(&o);
  CHECK(o.policy == CUTTERS_POLICY_SIGMA_MAX);
  CHECK(o.clamp_alpha == 0.5);
  CHECK(o.lambda == 1.0);
  CHECK(o.epsilon == 1e-2);
  CHECK(o.tol_residual == 1e-8);
  CHECK(o.max_iters == 10000);
  CHECK(o.fix_tol == 1e-13);
  CHECK(o.use_witness_ref == 0);
  cutters_options_init(nullptr);  // must be harmless
}

TEST_CASE("parse and accessors") {
  ProblemHandle h;
  REQUIRE(cutters_problem_parse(kDiagonal, &h.p) == CUTTERS_OK);
  CHECK(std::string(cutters_last_error()).empty());
  CHECK(cutters_problem_dim(h.p) == 2);
  CHECK(cutters_problem_count(h.p) == 2);
  CHECK(std::string(cutters_problem_kind(h.p)) == "eq");
  CHECK(cutters_problem_homogeneous(h.p) == 1);
  CHECK(cutters_problem_has_witness(h.p) == 1);
  double w[2] = {9.0, 9.0};
  REQUIRE(cutters_problem_witness(h.p, w) == CUTTERS_OK);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 0.0);

  ProblemHandle mixed;
  REQUIRE(cutters_problem_parse("dim 2\neq 1 0 0\nball 0 0 1\n", &mixed.p) == CUTTERS_OK);
  CHECK(std::string(cutters_problem_kind(mixed.p)) == "mixed");
  CHECK(cutters_problem_homogeneous(mixed.p) == 0);
  CHECK(cutters_problem_has_witness(mixed.p) == 0);
  CHECK(cutters_problem_witness(mixed.p, w) == CUTTERS_ERR_USAGE);
}

TEST_CASE("failures set the status and the thread message") {
  cutters_problem* p = nullptr;
  CHECK(cutters_problem_parse("dim 2\neq 1 0\n", &p) == CUTTERS_ERR_PARSE);
  CHECK(p == nullptr);
  CHECK(std::string(cutters_last_error()).find("line 2") != std::string::npos);

  CHECK(cutters_problem_parse("dim 2\neq 0 0 1\n", &p) == CUTTERS_ERR_VALIDATION);
  CHECK(cutters_problem_parse(nullptr, &p) == CUTTERS_ERR_USAGE);
  CHECK(cutters_problem_load("/nonexistent/nothing.txt", &p) == CUTTERS_ERR_IO);

  // a successful call clears the sticky message
  ProblemHandle ok;
  REQUIRE(cutters_problem_parse(kDiagonal, &ok.p) == CUTTERS_OK);
  CHECK(std::string(cutters_last_error()).empty());
}

TEST_CASE("serialize round-trips byte for byte") {
  ProblemHandle a;
  REQUIRE(cutters_problem_parse(kDiagonal, &a.p) == CUTTERS_OK);
  char* text_a = nullptr;
  REQUIRE(cutters_problem_serialize(a.p, &text_a) == CUTTERS_OK);

  ProblemHandle b;
  REQUIRE(cutters_problem_parse(text_a, &b.p) == CUTTERS_OK);
  char* text_b = nullptr;
  REQUIRE(cutters_problem_serialize(b.p, &text_b) == CUTTERS_OK);

  CHECK(std::strcmp(text_a, text_b) == 0);
  cutters_string_free(text_a);
  cutters_string_free(text_b);
}

TEST_CASE("save and load through the filesystem") {
  ProblemHandle a;
  REQUIRE(cutters_problem_parse(kDiagonal, &a.p) == CUTTERS_OK);
  const char* path = "/tmp/cutters_capi_io_test.txt";
  REQUIRE(cutters_problem_save(a.p, path) == CUTTERS_OK);
  ProblemHandle b;
  REQUIRE(cutters_problem_load(path, &b.p) == CUTTERS_OK);
  CHECK(cutters_problem_dim(b.p) == 2);
  CHECK(cutters_problem_count(b.p) == 2);
  std::remove(path);

  CHECK(cutters_problem_save(a.p, "/nonexistent/dir/x.txt") == CUTTERS_ERR_IO);
}

TEST_CASE("generation is deterministic and validates its arguments") {
  ProblemHandle a, b;
  REQUIRE(cutters_problem_generate(42, 3, 4, "eq", 0.0, &a.p) == CUTTERS_OK);
  REQUIRE(cutters_problem_generate(42, 3, 4, "eq", 0.0, &b.p) == CUTTERS_OK);
  char* ta = nullptr;
  char* tb = nullptr;
  REQUIRE(cutters_problem_serialize(a.p, &ta) == CUTTERS_OK);
  REQUIRE(cutters_problem_serialize(b.p, &tb) == CUTTERS_OK);
  CHECK(std::strcmp(ta, tb) == 0);
  cutters_string_free(ta);
  cutters_string_free(tb);
  CHECK(cutters_problem_has_witness(a.p) == 1);

  cutters_problem* p = nullptr;
  CHECK(cutters_problem_generate(1, 2, 2, "quadratic", 0.0, &p) == CUTTERS_ERR_USAGE);
  CHECK(cutters_problem_generate(1, 0, 2, "eq", 0.0, &p) == CUTTERS_ERR_USAGE);
  CHECK(cutters_problem_generate(1, 2, 2, "eq", 1.0, &p) == CUTTERS_ERR_USAGE);
  CHECK(cutters_problem_generate(1, 2, 2, nullptr, 0.0, &p) == CUTTERS_ERR_USAGE);
}

TEST_CASE("solve produces a trace and a final point") {
  ProblemHandle h;
  REQUIRE(cutters_problem_parse(kDiagonal, &h.p) == CUTTERS_OK);

  const double x0[2] = {2.0, 1.0};
  cutters_options o;
  cutters_options_init(&o);
  o.use_witness_ref = 1;

  ResultHandle res;
  REQUIRE(cutters_solve(h.p, x0, &o, &res.r) == CUTTERS_OK);
  CHECK(cutters_result_status(res.r) == CUTTERS_SOLVE_CONVERGED);
  CHECK(cutters_result_iterations(res.r) >= 1);
  CHECK(cutters_result_records(res.r) == cutters_result_iterations(res.r) + 1);

  int dim = 0;
  const double* pt = cutters_result_point(res.r, &dim);
  REQUIRE(dim == 2);
  CHECK(std::fabs(pt[0]) <= 1e-6);
  CHECK(std::fabs(pt[1]) <= 1e-6);

  cutters_record rec;
  REQUIRE(cutters_result_record(res.r, 0, &rec) == CUTTERS_OK);
  CHECK(rec.iter == 0);
  CHECK(rec.residual == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
  CHECK(rec.lambda == 1.0);
  CHECK(!std::isnan(rec.dist_to_ref));
  CHECK(rec.dist_to_ref == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  CHECK(cutters_result_record(res.r, cutters_result_records(res.r), &rec) == CUTTERS_ERR_USAGE);
  CHECK(cutters_result_record(res.r, -1, &rec) == CUTTERS_ERR_USAGE);
}

TEST_CASE("solve without a reference leaves dist_to_ref unset") {
  ProblemHandle h;
  REQUIRE(cutters_problem_parse("dim 2\neq 1 0 0\neq 1 -1 0\n", &h.p) == CUTTERS_OK);
  const double x0[2] = {2.0, 1.0};
  ResultHandle res;
  REQUIRE(cutters_solve(h.p, x0, nullptr, &res.r) == CUTTERS_OK);
  cutters_record rec;
  REQUIRE(cutters_result_record(res.r, 0, &rec) == CUTTERS_OK);
  CHECK(std::isnan(rec.dist_to_ref));

  // asking for the witness reference on a witness-free problem is an error
  cutters_options o;
  cutters_options_init(&o);
  o.use_witness_ref = 1;
  cutters_result* bad = nullptr;
  CHECK(cutters_solve(h.p, x0, &o, &bad) == CUTTERS_ERR_USAGE);
  CHECK(bad == nullptr);
}

TEST_CASE("null x0 starts from the origin") {
  ProblemHandle h;
  REQUIRE(cutters_problem_parse(kDiagonal, &h.p) == CUTTERS_OK);
  ResultHandle res;
  REQUIRE(cutters_solve(h.p, nullptr, nullptr, &res.r) == CUTTERS_OK);
  // the origin is already feasible here
  CHECK(cutters_result_status(res.r) == CUTTERS_SOLVE_CONVERGED);
  CHECK(cutters_result_iterations(res.r) == 0);
}

TEST_CASE("solve rejects out-of-contract options") {
  ProblemHandle h;
  REQUIRE(cutters_problem_parse(kDiagonal, &h.p) == CUTTERS_OK);
  const double x0[2] = {2.0, 1.0};
  cutters_options o;
  cutters_result* r = nullptr;

  cutters_options_init(&o);
  o.lambda = 2.5;
  CHECK(cutters_solve(h.p, x0, &o, &r) == CUTTERS_ERR_USAGE);

  cutters_options_init(&o);
  o.policy = CUTTERS_POLICY_CLAMPED;
  o.clamp_alpha = 0.7;
  CHECK(cutters_solve(h.p, x0, &o, &r) == CUTTERS_ERR_USAGE);

  cutters_options_init(&o);
  o.max_iters = 0;
  CHECK(cutters_solve(h.p, x0, &o, &r) == CUTTERS_ERR_USAGE);

  cutters_options_init(&o);
  o.policy = static_cast<cutters_policy>(99);
  CHECK(cutters_solve(h.p, x0, &o, &r) == CUTTERS_ERR_USAGE);

  CHECK(cutters_solve(nullptr, x0, nullptr, &r) == CUTTERS_ERR_USAGE);
  CHECK(r == nullptr);
}

TEST_CASE("iteration cap reports max-iters") {
  ProblemHandle h;
  REQUIRE(cutters_problem_parse(kDiagonal, &h.p) == CUTTERS_OK);
  const double x0[2] = {2.0, 1.0};
  cutters_options o;
  cutters_options_init(&o);
  o.policy = CUTTERS_POLICY_UNIT;
  o.max_iters = 1;
  o.tol_residual = 1e-14;
  ResultHandle res;
  REQUIRE(cutters_solve(h.p, x0, &o, &res.r) == CUTTERS_OK);
  CHECK(cutters_result_status(res.r) == CUTTERS_SOLVE_MAX_ITERS);
  CHECK(cutters_result_iterations(res.r) == 1);
}

TEST_CASE("freeing null handles is safe") {
  cutters_problem_free(nullptr);
  cutters_result_free(nullptr);
  cutters_string_free(nullptr);
}
