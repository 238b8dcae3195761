#pragma once

#include "tabsolve/transform.hpp"

#include <functional>
#include <optional>

namespace tabsolve {

struct BarrierParams {
  double mu = 10.0;        // outer multiplier, > 1
  double eps = 1e-6;       // stop when m/t < eps
  double t0 = 1.0;         // initial barrier weight
  double newton_tol = 1e-10;
  int max_outer = 64;
  int max_inner = 100;
  // Called after each outer centering with (outer index, t, iterate).
  std::function<void(int, double, const Vector&)> outer_trace;
};

struct CenteringResult {
  Vector x;
  int newton_steps = 0;
  bool converged = false;
  std::vector<double> composite;  // t*f0 + phi before each step and at exit
};

// Newton minimization of t*(0.5 x'Qx - g'x) - sum_i log(d_i - c_i'x) over
// {A_eq x = b_eq}, from strictly feasible x. Backtracking line search
// (shrink 0.5, sufficient decrease 1e-4) under a 0.99 fraction-to-boundary
// cap keeps every iterate strictly feasible.
CenteringResult centering_step(const QpProblem& qp, const Vector& x, double t,
                               const BarrierParams& params = {});

// Phase-I: minimizes an auxiliary s with C_ineq x - d <= s*1 by the same
// barrier method, from x = least-squares on A_eq and s = max violation + 1.
// Returns a point with A_eq x = b_eq (to 1e-8) and max(C_ineq x - d) <
// -1e-9, or nullopt when no strictly interior point exists.
std::optional<Vector> find_strictly_feasible(const QpProblem& qp,
                                             const BarrierParams& params = {});

struct QpResult {
  Vector x;
  SolveStatus status = SolveStatus::Optimal;
  int iterations = 0;  // outer centering steps
  double objective = 0.0;
};

// Barrier method: phase-I, then x <- centering_step(x, t), t <- mu*t,
// stopping when m/t < eps (m = inequality row count).
QpResult solve_qp_ip(const QpProblem& qp, const BarrierParams& params = {});

}  // namespace tabsolve
