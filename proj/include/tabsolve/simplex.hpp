#pragma once

#include "tabsolve/transform.hpp"

#include <optional>

namespace tabsolve {

// Equality standard form min c'x s.t. A x = b, x >= 0, ready for the
// tableau. col_map recovers LpProblem columns: lp_x[j] = x[plus] - x[minus]
// (minus = -1 for columns that were already nonnegative).
struct StandardForm {
  Matrix A;
  Vector b;  // >= 0, rows negated as needed
  Vector c;
  std::vector<std::pair<int, int>> col_map;
  int eq_rows = 0;  // leading rows that came from A_eq
  int slack0 = 0;   // first inequality-slack column
};

StandardForm to_standard_form(const LpProblem& lp);

// Dense simplex tableau. body is rows x (cols + 1) with the rhs last;
// cost_row holds reduced costs for the current phase.
struct Tableau {
  Matrix body;
  std::vector<int> basis;  // basic column per row
  Vector cost_row;
  double objective = 0.0;
  int art_begin = 0;  // first artificial column; == structural count
  int pivots = 0;
  int degenerate = 0;

  int rows() const { return static_cast<int>(body.rows()); }
  int cols() const { return static_cast<int>(body.cols()) - 1; }
};

// Adds artificial columns to rows lacking a unit slack column, installs the
// initial basis, and loads the phase-1 (artificial cost) objective row.
Tableau build_tableau(const StandardForm& sf);

// Drives the artificial cost to zero. Returns false if the optimum stays
// above 1e-9 (infeasible). Remaining basic artificials are pivoted out;
// redundant rows are dropped.
bool phase1(Tableau& t, int max_iter);

struct LpResult {
  Vector x;  // over LpProblem columns
  double objective = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  int iterations = 0;  // total pivots, both phases
};

// Two-phase primal simplex. Dantzig pricing, Bland's rule engaged after
// 2*(rows+cols) degenerate pivots; minimum-ratio ties go to the lowest row
// index. max_iter <= 0 picks an automatic bound.
LpResult solve_lp(const LpProblem& lp, int max_iter = 0);

// Phase-1 only: a point satisfying the LP's constraints (cost ignored).
// nullopt if infeasible.
std::optional<Vector> find_feasible_point(const LpProblem& lp);

}  // namespace tabsolve
