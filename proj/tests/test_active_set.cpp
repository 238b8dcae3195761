#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tabsolve/active_set.hpp"
#include "tabsolve/bench.hpp"

using namespace tabsolve;
using tabsolve::testing::random_feasible_qp;
using tabsolve::testing::three_button;

namespace {

// min (x1-1)^2 + (x2-2.5)^2 over five halfplanes; optimum (1.4, 1.7).
QpProblem five_constraint_qp() {
  QpProblem qp;
  qp.n = 2;
  qp.orig_vars = 2;
  qp.Q = 2.0 * Matrix::Identity(2, 2);
  qp.g.resize(2);
  qp.g << 2, 5;
  qp.A_eq.resize(0, 2);
  qp.b_eq.resize(0);
  qp.C_ineq.resize(5, 2);  // the >= rows negated into <= form
  qp.C_ineq << -1, 2, 1, 2, 1, -2, -1, 0, 0, -1;
  qp.d_ineq.resize(5);
  qp.d_ineq << 2, 6, 2, 0, 0;
  return qp;
}

QpProblem one_var_bound_qp() {  // min x^2 s.t. x >= 1
  QpProblem qp;
  qp.n = 1;
  qp.orig_vars = 1;
  qp.Q = Matrix::Constant(1, 1, 2.0);
  qp.g = Vector::Zero(1);
  qp.A_eq.resize(0, 1);
  qp.b_eq.resize(0);
  qp.C_ineq = Matrix::Constant(1, 1, -1.0);
  qp.d_ineq = Vector::Constant(1, -1.0);
  return qp;
}

}  // namespace

TEST_CASE("eq_subproblem: unconstrained newton direction") {
  Vector grad(2);
  grad << 2, 0;
  const auto [delta, lambda] =
      eq_subproblem(Matrix::Identity(2, 2), grad, Matrix(0, 2));
  CHECK(delta(0) == doctest::Approx(-2.0));
  CHECK(delta(1) == doctest::Approx(0.0));
  CHECK(lambda.size() == 0);
}

TEST_CASE("eq_subproblem: single active row") {
  Matrix W(1, 2);
  W << 1, 1;
  Vector grad(2);
  grad << 2, 0;
  const auto [delta, lambda] = eq_subproblem(Matrix::Identity(2, 2), grad, W);
  CHECK(delta(0) == doctest::Approx(-1.0));
  CHECK(delta(1) == doctest::Approx(1.0));
  CHECK(lambda(0) == doctest::Approx(-1.0));
}

TEST_CASE("eq_subproblem: zero gradient short-circuits") {
  Matrix W(1, 2);
  W << 1, 1;
  const auto [delta, lambda] =
      eq_subproblem(Matrix::Identity(2, 2), Vector::Zero(2), W);
  CHECK(delta.isZero(0.0));
  CHECK(lambda.isZero(0.0));
}

TEST_CASE("step_length_alpha: blocking halfway to a bound") {
  Matrix C(1, 1);
  C << 1;  // x <= 4
  Vector d(1), x(1), delta(1);
  d << 4;
  x << 2;
  delta << 4;
  const StepLength s = step_length_alpha(C, d, x, delta, {});
  CHECK(s.alpha == doctest::Approx(0.5));
  REQUIRE(s.blocking.has_value());
  CHECK(*s.blocking == 0);
}

TEST_CASE("step_length_alpha: unrestricted direction takes the full step") {
  Matrix C(1, 1);
  C << 1;
  Vector d(1), x(1), delta(1);
  d << 4;
  x << 2;
  delta << -1;  // moving away
  const StepLength s = step_length_alpha(C, d, x, delta, {});
  CHECK(s.alpha == 1.0);
  CHECK_FALSE(s.blocking.has_value());
}

TEST_CASE("step_length_alpha: outward from a tight non-active bound is zero") {
  Matrix C(1, 1);
  C << 1;
  Vector d(1), x(1), delta(1);
  d << 4;
  x << 4;
  delta << 1;
  const StepLength s = step_length_alpha(C, d, x, delta, {});
  CHECK(s.alpha == 0.0);
  REQUIRE(s.blocking.has_value());
  CHECK(*s.blocking == 0);
}

TEST_CASE("step_length_alpha: ties pick the lowest row index") {
  Matrix C(2, 1);
  C << 1, 1;  // identical rows
  Vector d(2), x(1), delta(1);
  d << 4, 4;
  x << 0;
  delta << 8;
  const StepLength s = step_length_alpha(C, d, x, delta, {});
  CHECK(s.alpha == doctest::Approx(0.5));
  REQUIRE(s.blocking.has_value());
  CHECK(*s.blocking == 0);
}

TEST_CASE("solve_qp_as: five-constraint reference problem") {
  const QpProblem qp = five_constraint_qp();
  const QpResult r = solve_qp_as(qp);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(std::abs(r.x(0) - 1.4) <= 1e-8);
  CHECK(std::abs(r.x(1) - 1.7) <= 1e-8);
  // in (x-1)^2 + (x2-2.5)^2 terms the optimal value is 0.8
  const double shifted = std::pow(r.x(0) - 1.0, 2) + std::pow(r.x(1) - 2.5, 2);
  CHECK(shifted == doctest::Approx(0.8).epsilon(1e-9));

  // KKT at the reported optimum: the single active row -x1+2x2 <= 2 carries
  // multiplier 0.8 and stationarity holds.
  const Vector grad = qp.Q * r.x - qp.g;
  const Vector c0 = qp.C_ineq.row(0).transpose();
  const double lambda0 = 0.8;
  CHECK((grad + lambda0 * c0).lpNorm<Eigen::Infinity>() <= 1e-6);
  CHECK(std::abs(qp.C_ineq.row(0).dot(r.x) - qp.d_ineq(0)) <= 1e-6);
}

TEST_CASE("solve_qp_as: three-button symmetry") {
  const QpResult r = solve_qp_as(to_qp(three_button()));
  CHECK(r.status == SolveStatus::Optimal);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(r.x(i) - 100.0) <= 1e-6);
  CHECK(r.objective == doctest::Approx(1200.0).epsilon(1e-9));
}

TEST_CASE("solve_qp_as: one add-constraint iteration from x=3") {
  AsOptions opts;
  opts.start = Vector::Constant(1, 3.0);
  std::vector<std::pair<Vector, std::vector<int>>> trace;
  opts.trace = [&](const Vector& x, const std::vector<int>& act) {
    trace.emplace_back(x, act);
  };
  const QpResult r = solve_qp_as(one_var_bound_qp(), opts);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(std::abs(r.x(0) - 1.0) <= 1e-12);
  CHECK(r.iterations == 2);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].first(0) == doctest::Approx(3.0));
  CHECK(trace[0].second.empty());
  CHECK(trace[1].first(0) == doctest::Approx(1.0));
  CHECK(trace[1].second == std::vector<int>{0});
}

TEST_CASE("solve_qp_as: infeasible hard rows") {
  QpProblem qp;
  qp.n = 1;
  qp.orig_vars = 1;
  qp.Q = Matrix::Constant(1, 1, 2.0);
  qp.g = Vector::Zero(1);
  qp.A_eq.resize(2, 1);
  qp.A_eq << 1, 1;
  qp.b_eq.resize(2);
  qp.b_eq << 1, 2;
  qp.C_ineq.resize(0, 1);
  qp.d_ineq.resize(0);
  CHECK(solve_qp_as(qp).status == SolveStatus::Infeasible);
}

TEST_CASE("solve_qp_as: iterates stay feasible, working set independent") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 50; ++k) {
    const QpProblem qp = random_feasible_qp(rng);
    AsOptions opts;
    bool all_feasible = true, all_independent = true;
    opts.trace = [&](const Vector& x, const std::vector<int>& act) {
      if (qp.A_eq.rows() > 0 &&
          (qp.A_eq * x - qp.b_eq).lpNorm<Eigen::Infinity>() > 1e-8)
        all_feasible = false;
      if (qp.C_ineq.rows() > 0 &&
          (qp.C_ineq * x - qp.d_ineq).maxCoeff() > 1e-8)
        all_feasible = false;
      Matrix W(qp.A_eq.rows() + act.size(), qp.n);
      if (qp.A_eq.rows() > 0) W.topRows(qp.A_eq.rows()) = qp.A_eq;
      for (size_t j = 0; j < act.size(); ++j)
        W.row(qp.A_eq.rows() + j) = qp.C_ineq.row(act[j]);
      if (W.rows() > 0 &&
          Eigen::ColPivHouseholderQR<Matrix>(W.transpose()).rank() < W.rows())
        all_independent = false;
    };
    const QpResult r = solve_qp_as(qp, opts);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(all_feasible);
    CHECK(all_independent);
  }
}

TEST_CASE("solve_qp_as: agrees with interior point on random PD instances") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 50; ++k) {
    const QpProblem qp = random_feasible_qp(rng);
    const QpResult as = solve_qp_as(qp);
    BarrierParams params;
    params.eps = 1e-8;
    const QpResult ip = solve_qp_ip(qp, params);
    REQUIRE(as.status == SolveStatus::Optimal);
    REQUIRE(ip.status == SolveStatus::Optimal);
    CHECK(std::abs(as.objective - ip.objective) <= 1e-4);
  }
}
