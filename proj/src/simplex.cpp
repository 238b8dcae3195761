#include "tabsolve/simplex.hpp"

#include <cmath>
#include <limits>

namespace tabsolve {

namespace {

constexpr double kCostTol = 1e-9;
constexpr double kRatioTol = 1e-9;
constexpr double kDegenTol = 1e-9;

int auto_iter_cap(int rows, int cols) { return 200 + 20 * (rows + cols); }

// One Gauss-Jordan elimination step at (leave, enter), updating basis,
// objective, and the reduced-cost row.  The elimination touches every row
// of the tableau unconditionally — each pivot costs one full dense rank-1
// update, which is the behavior the benchmarks are meant to measure.
void gj_pivot(Tableau& t, int leave, int enter) {
  const int last = t.body.cols() - 1;
  const double piv = t.body(leave, enter);
  const double ratio = t.body(leave, last) / piv;
  if (ratio <= kDegenTol) ++t.degenerate;
  t.objective += t.cost_row(enter) * ratio;
  t.body.row(leave) /= piv;
  Vector factors = t.body.col(enter);
  factors(leave) = 0.0;
  const Vector prow = t.body.row(leave);
  t.body.noalias() -= factors * prow.transpose();
  const double fc = t.cost_row(enter);
  t.cost_row -= fc * prow.head(t.cost_row.size());
  t.basis[leave] = enter;
  ++t.pivots;
}

enum class PivotOutcome { Optimal, Pivoted, Unbounded };

PivotOutcome pivot_once(Tableau& t) {
  const int ncols = static_cast<int>(t.cost_row.size());
  const int last = t.body.cols() - 1;
  const bool bland = t.degenerate > 2 * (t.rows() + ncols);

  int enter = -1;
  if (bland) {
    for (int j = 0; j < ncols; ++j)
      if (t.cost_row(j) < -kCostTol) { enter = j; break; }
  } else {
    double best = -kCostTol;
    for (int j = 0; j < ncols; ++j)
      if (t.cost_row(j) < best) { best = t.cost_row(j); enter = j; }
  }
  if (enter < 0) return PivotOutcome::Optimal;

  // Minimum-ratio test; ascending scan keeps ties on the lowest row index.
  int leave = -1;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < t.rows(); ++i) {
    const double a = t.body(i, enter);
    if (a <= kRatioTol) continue;
    const double r = std::max(0.0, t.body(i, last)) / a;
    if (r < best_ratio) { best_ratio = r; leave = i; }
  }
  if (leave < 0) return PivotOutcome::Unbounded;
  if (bland) {
    // Anti-cycling tie-break: among minimum-ratio rows take the lowest
    // basic variable index.
    for (int i = 0; i < t.rows(); ++i) {
      const double a = t.body(i, enter);
      if (a <= kRatioTol) continue;
      const double r = std::max(0.0, t.body(i, last)) / a;
      if (r <= best_ratio + 1e-12 && t.basis[i] < t.basis[leave]) leave = i;
    }
  }
  gj_pivot(t, leave, enter);
  return PivotOutcome::Pivoted;
}

void drop_rows(Tableau& t, const std::vector<int>& doomed) {
  if (doomed.empty()) return;
  std::vector<bool> dead(t.rows(), false);
  for (int i : doomed) dead[i] = true;
  Matrix body(t.rows() - static_cast<int>(doomed.size()), t.body.cols());
  std::vector<int> basis;
  int k = 0;
  for (int i = 0; i < t.rows(); ++i) {
    if (dead[i]) continue;
    body.row(k++) = t.body.row(i);
    basis.push_back(t.basis[i]);
  }
  t.body = std::move(body);
  t.basis = std::move(basis);
}

Vector standard_solution(const Tableau& t) {
  Vector x = Vector::Zero(t.cost_row.size());
  const int last = t.body.cols() - 1;
  for (int i = 0; i < t.rows(); ++i) x(t.basis[i]) = t.body(i, last);
  return x;
}

Vector recombine(const StandardForm& sf, const Vector& x_std, int lp_cols) {
  Vector x(lp_cols);
  for (int j = 0; j < lp_cols; ++j) {
    auto [plus, minus] = sf.col_map[j];
    x(j) = x_std(plus) - (minus >= 0 ? x_std(minus) : 0.0);
  }
  return x;
}

}  // namespace

StandardForm to_standard_form(const LpProblem& lp) {
  const int n_lp = lp.cols();
  const int m_eq = static_cast<int>(lp.A_eq.rows());
  const int m_in = static_cast<int>(lp.C_ineq.rows());
  const int m = m_eq + m_in;

  StandardForm sf;
  sf.col_map.resize(n_lp);
  int N = 0;
  for (int j = 0; j < n_lp; ++j) {
    if (lp.nonneg[j]) {
      sf.col_map[j] = {N, -1};
      N += 1;
    } else {
      sf.col_map[j] = {N, N + 1};  // v = v+ - v-
      N += 2;
    }
  }
  const int slack0 = N;
  N += m_in;
  sf.eq_rows = m_eq;
  sf.slack0 = slack0;

  sf.A = Matrix::Zero(m, N);
  sf.b.resize(m);
  sf.c = Vector::Zero(N);
  for (int j = 0; j < n_lp; ++j) {
    auto [plus, minus] = sf.col_map[j];
    for (int i = 0; i < m_eq; ++i) {
      const double a = lp.A_eq(i, j);
      if (a == 0.0) continue;
      sf.A(i, plus) = a;
      if (minus >= 0) sf.A(i, minus) = -a;
    }
    for (int i = 0; i < m_in; ++i) {
      const double a = lp.C_ineq(i, j);
      if (a == 0.0) continue;
      sf.A(m_eq + i, plus) = a;
      if (minus >= 0) sf.A(m_eq + i, minus) = -a;
    }
    sf.c(plus) = lp.c(j);
    if (minus >= 0) sf.c(minus) = -lp.c(j);
  }
  for (int i = 0; i < m_in; ++i) sf.A(m_eq + i, slack0 + i) = 1.0;
  sf.b.head(m_eq) = lp.b_eq;
  sf.b.tail(m_in) = lp.d_ineq;

  for (int i = 0; i < m; ++i) {
    if (sf.b(i) < 0.0) {
      sf.A.row(i) = -sf.A.row(i);
      sf.b(i) = -sf.b(i);
    }
  }
  return sf;
}

Tableau build_tableau(const StandardForm& sf) {
  const int m = static_cast<int>(sf.A.rows());
  const int N = static_cast<int>(sf.A.cols());

  // Rows whose own slack survived rhs normalization keep it as the initial
  // basic column; everything else gets an artificial.
  std::vector<int> art_rows;
  std::vector<int> basis(m, -1);
  for (int i = 0; i < m; ++i) {
    const int slack = i >= sf.eq_rows ? sf.slack0 + (i - sf.eq_rows) : -1;
    if (slack >= 0 && sf.A(i, slack) == 1.0) basis[i] = slack;
    else art_rows.push_back(i);
  }

  Tableau t;
  t.art_begin = N;
  const int na = static_cast<int>(art_rows.size());
  t.body = Matrix::Zero(m, N + na + 1);
  t.body.leftCols(N) = sf.A;
  t.body.col(N + na) = sf.b;
  for (int k = 0; k < na; ++k) {
    t.body(art_rows[k], N + k) = 1.0;
    basis[art_rows[k]] = N + k;
  }
  t.basis = std::move(basis);

  // Phase-1 reduced costs: cost 1 on artificials, priced out of the basis.
  t.cost_row = Vector::Zero(N + na);
  t.cost_row.segment(N, na).setOnes();
  t.objective = 0.0;
  for (int i : art_rows) {
    t.cost_row -= t.body.row(i).head(N + na);
    t.objective += t.body(i, N + na);
  }
  return t;
}

bool phase1(Tableau& t, int max_iter) {
  if (max_iter <= 0) max_iter = auto_iter_cap(t.rows(), t.cols());
  while (t.pivots < max_iter) {
    const PivotOutcome out = pivot_once(t);
    if (out == PivotOutcome::Optimal) break;
    if (out == PivotOutcome::Unbounded) return false;  // cannot happen: w >= 0
  }
  const int last = t.body.cols() - 1;
  double w = 0.0;
  for (int i = 0; i < t.rows(); ++i)
    if (t.basis[i] >= t.art_begin) w += t.body(i, last);
  if (w > 1e-9) return false;

  // Pivot leftover artificials out on any usable structural column; rows
  // with none are redundant and dropped.
  std::vector<int> redundant;
  for (int i = 0; i < t.rows(); ++i) {
    if (t.basis[i] < t.art_begin) continue;
    int col = -1;
    for (int j = 0; j < t.art_begin; ++j)
      if (std::abs(t.body(i, j)) > 1e-7) { col = j; break; }
    if (col >= 0) gj_pivot(t, i, col);
    else redundant.push_back(i);
  }
  drop_rows(t, redundant);

  // Artificial columns are spent; cut them off.
  Matrix body(t.rows(), t.art_begin + 1);
  body.leftCols(t.art_begin) = t.body.leftCols(t.art_begin);
  body.col(t.art_begin) = t.body.col(t.body.cols() - 1);
  t.body = std::move(body);
  t.cost_row.conservativeResize(t.art_begin);
  return true;
}

LpResult solve_lp(const LpProblem& lp, int max_iter) {
  const StandardForm sf = to_standard_form(lp);
  Tableau t = build_tableau(sf);
  if (max_iter <= 0) max_iter = auto_iter_cap(t.rows(), t.cols());

  LpResult res;
  if (!phase1(t, max_iter)) {
    res.x = Vector::Zero(lp.cols());
    res.status = t.pivots >= max_iter ? SolveStatus::IterationLimit
                                      : SolveStatus::Infeasible;
    res.iterations = t.pivots;
    return res;
  }

  // Phase 2: price the true costs out of the current basis.
  const int N = t.cols();
  const int last = N;
  t.cost_row = sf.c;
  t.objective = 0.0;
  for (int i = 0; i < t.rows(); ++i) {
    const double cb = sf.c(t.basis[i]);
    if (cb != 0.0) {
      t.cost_row -= cb * t.body.row(i).head(N);
      t.objective += cb * t.body(i, last);
    }
  }

  SolveStatus status = SolveStatus::IterationLimit;
  while (t.pivots < max_iter) {
    const PivotOutcome out = pivot_once(t);
    if (out == PivotOutcome::Optimal) { status = SolveStatus::Optimal; break; }
    if (out == PivotOutcome::Unbounded) { status = SolveStatus::Unbounded; break; }
  }

  res.status = status;
  res.iterations = t.pivots;
  res.x = recombine(sf, standard_solution(t), lp.cols());
  res.objective = lp.c.dot(res.x);
  return res;
}

std::optional<Vector> find_feasible_point(const LpProblem& lp) {
  const StandardForm sf = to_standard_form(lp);
  Tableau t = build_tableau(sf);
  if (!phase1(t, 0)) return std::nullopt;
  return recombine(sf, standard_solution(t), lp.cols());
}

}  // namespace tabsolve
