#pragma once

#include "tabsolve/interior_point.hpp"
#include "tabsolve/transform.hpp"

#include <functional>
#include <optional>

namespace tabsolve {

// Inequality rows currently held at equality; A_eq rows are always active.
struct ActiveSet {
  std::vector<int> indices;
};

// Solves Q delta + W' lambda = -grad, W delta = 0. W stacks the equality
// rows and the active inequality rows. grad == 0 short-circuits to
// (0, 0): the objective is stationary, whatever W is.
std::pair<Vector, Vector> eq_subproblem(const Matrix& Q, const Vector& grad,
                                        const Matrix& W);

struct StepLength {
  double alpha = 1.0;
  std::optional<int> blocking;
};

// Largest alpha <= 1 with x + alpha*delta feasible for all C rows; the
// min runs over inactive rows with c_i'delta > 0 (moving toward their
// bound). blocking = first argmin row when alpha < 1.
StepLength step_length_alpha(const Matrix& C, const Vector& d, const Vector& x,
                             const Vector& delta, const ActiveSet& active);

struct AsOptions {
  int max_iter = 0;  // <= 0: automatic
  // Called each iteration with (iterate, active inequality rows).
  std::function<void(const Vector&, const std::vector<int>&)> trace;
  // Start from this feasible point instead of the simplex phase-I result.
  std::optional<Vector> start;
};

// Active set method: base point from simplex phase-I on the hard rows,
// then add blocking rows / drop most-negative-multiplier rows until
// delta = 0 and all inequality multipliers are >= -1e-9.
QpResult solve_qp_as(const QpProblem& qp, const AsOptions& opts = {});

}  // namespace tabsolve
