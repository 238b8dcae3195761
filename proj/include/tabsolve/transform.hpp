#pragma once

#include "tabsolve/model.hpp"

namespace tabsolve {

// Where a constraint landed in a lowered problem: its main row in A_eq
// (eq = true) or C_ineq (eq = false).
struct RowRef {
  bool eq = false;
  int row = -1;
};

// min 0.5 x'Qx - g'x  s.t.  A_eq x = b_eq, C_ineq x <= d_ineq.
// Columns: the spec's variables first, then one slack per soft constraint.
struct QpProblem {
  int n = 0;         // total columns
  int orig_vars = 0; // leading columns that are spec variables
  Matrix Q;
  Vector g;
  Matrix A_eq;
  Vector b_eq;
  Matrix C_ineq;
  Vector d_ineq;
  std::vector<int> slack_col;  // per constraint, -1 for hard
  std::vector<RowRef> rows;    // per constraint, its main row
};

// min c'x  s.t.  A_eq x = b_eq, C_ineq x <= d_ineq, x_j >= 0 where
// nonneg[j]. Columns: spec variables (free), then soft slack columns.
struct LpProblem {
  int orig_vars = 0;
  Vector c;
  Matrix A_eq;
  Vector b_eq;
  Matrix C_ineq;
  Vector d_ineq;
  std::vector<bool> nonneg;
  // Per constraint: soft EQ -> (plus, minus) surplus pair; soft LE/GE ->
  // (surplus, -1); hard -> (-1, -1).
  std::vector<std::pair<int, int>> split_map;
  std::vector<RowRef> rows;

  int cols() const { return static_cast<int>(c.size()); }
};

// Lower to a QP: hard rows verbatim (GE negated to LE), soft EQ rows get a
// free slack (a'x + s = b), soft LE rows a surplus (a'x - s <= b, -s <= 0);
// Q puts 2*penalty on slack diagonals so the objective is
// sum_i penalty_i * s_i^2, g = 0.
QpProblem to_qp(const LayoutSpec& spec);

// Lower to an LP: soft EQ rows split the violation (a'x + s+ - s- = b),
// soft LE rows get one surplus (a'x - s <= b); cost is penalty on each
// slack column so the objective is sum_i penalty_i * |violation_i|.
LpProblem to_lp(const LayoutSpec& spec);

inline double qp_objective(const QpProblem& qp, const Vector& x) {
  return 0.5 * x.dot(qp.Q * x) - qp.g.dot(x);
}

inline double lp_objective(const LpProblem& lp, const Vector& x) {
  return lp.c.dot(x);
}

}  // namespace tabsolve
