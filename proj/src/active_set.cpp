#include "tabsolve/active_set.hpp"

#include "tabsolve/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace tabsolve {

namespace {

constexpr double kZeroStep = 1e-9;
constexpr double kLambdaTol = 1e-9;
constexpr double kActiveTol = 1e-8;

Matrix working_rows(const Matrix& A_eq, const Matrix& C, const ActiveSet& act) {
  Matrix W(A_eq.rows() + act.indices.size(), A_eq.cols() > 0 ? A_eq.cols() : C.cols());
  if (A_eq.rows() > 0) W.topRows(A_eq.rows()) = A_eq;
  for (size_t k = 0; k < act.indices.size(); ++k)
    W.row(A_eq.rows() + k) = C.row(act.indices[k]);
  return W;
}

bool independent_with(const Matrix& W, const Vector& row) {
  Matrix cand(W.rows() + 1, W.cols());
  cand.topRows(W.rows()) = W;
  cand.bottomRows(1) = row.transpose();
  return Eigen::ColPivHouseholderQR<Matrix>(cand.transpose()).rank() == cand.rows();
}

// True when the lowering left slack columns behind and recorded which
// constraint rows are hard and which merely define a slack.
bool has_slack_metadata(const QpProblem& qp) {
  return qp.n > qp.orig_vars && qp.orig_vars > 0 && !qp.rows.empty() &&
         qp.slack_col.size() == qp.rows.size();
}

// Base feasible point via simplex phase-I on the hard rows.  A problem with
// slack columns only constrains the leading variables through its hard rows,
// so the probe runs on those alone; each slack is then pinned by its defining
// row (equality rows exactly, inequality rows at the smallest feasible
// nonnegative value).  Problems without slack structure probe every row.
std::optional<Vector> base_point(const QpProblem& qp) {
  if (!has_slack_metadata(qp)) {
    LpProblem feas;
    feas.orig_vars = qp.n;
    feas.c = Vector::Zero(qp.n);
    feas.A_eq = qp.A_eq;
    feas.b_eq = qp.b_eq;
    feas.C_ineq = qp.C_ineq;
    feas.d_ineq = qp.d_ineq;
    feas.nonneg.assign(qp.n, false);
    return find_feasible_point(feas);
  }

  const int n0 = qp.orig_vars;
  std::vector<int> hard_eq, hard_in;
  for (size_t i = 0; i < qp.rows.size(); ++i) {
    if (qp.slack_col[i] >= 0) continue;
    (qp.rows[i].eq ? hard_eq : hard_in).push_back(qp.rows[i].row);
  }

  LpProblem feas;
  feas.orig_vars = n0;
  feas.c = Vector::Zero(n0);
  feas.nonneg.assign(n0, false);
  feas.A_eq.resize(static_cast<Eigen::Index>(hard_eq.size()), n0);
  feas.b_eq.resize(static_cast<Eigen::Index>(hard_eq.size()));
  for (size_t k = 0; k < hard_eq.size(); ++k) {
    feas.A_eq.row(static_cast<Eigen::Index>(k)) =
        qp.A_eq.row(hard_eq[k]).head(n0);
    feas.b_eq(static_cast<Eigen::Index>(k)) = qp.b_eq(hard_eq[k]);
  }
  feas.C_ineq.resize(static_cast<Eigen::Index>(hard_in.size()), n0);
  feas.d_ineq.resize(static_cast<Eigen::Index>(hard_in.size()));
  for (size_t k = 0; k < hard_in.size(); ++k) {
    feas.C_ineq.row(static_cast<Eigen::Index>(k)) =
        qp.C_ineq.row(hard_in[k]).head(n0);
    feas.d_ineq(static_cast<Eigen::Index>(k)) = qp.d_ineq(hard_in[k]);
  }

  const auto x0 = find_feasible_point(feas);
  if (!x0) return std::nullopt;

  Vector x = Vector::Zero(qp.n);
  x.head(n0) = *x0;
  for (size_t i = 0; i < qp.rows.size(); ++i) {
    const int j = qp.slack_col[i];
    if (j < 0) continue;
    const RowRef ref = qp.rows[i];
    if (ref.eq) {
      const double ax = qp.A_eq.row(ref.row).head(n0).dot(*x0);
      x(j) = (qp.b_eq(ref.row) - ax) / qp.A_eq(ref.row, j);
    } else {
      const double ax = qp.C_ineq.row(ref.row).head(n0).dot(*x0);
      x(j) = std::max(0.0, (ax - qp.d_ineq(ref.row)) / -qp.C_ineq(ref.row, j));
    }
  }
  return x;
}

}  // namespace

std::pair<Vector, Vector> eq_subproblem(const Matrix& Q, const Vector& grad,
                                        const Matrix& W) {
  if (grad.isZero(0.0))
    return {Vector::Zero(Q.rows()), Vector::Zero(W.rows())};
  return solve_kkt(Q, W, -grad, Vector::Zero(W.rows()));
}

StepLength step_length_alpha(const Matrix& C, const Vector& d, const Vector& x,
                             const Vector& delta, const ActiveSet& active) {
  std::vector<bool> is_active(C.rows(), false);
  for (int i : active.indices) is_active[i] = true;

  StepLength out;
  for (Eigen::Index i = 0; i < C.rows(); ++i) {
    if (is_active[i]) continue;
    const double cd = C.row(i).dot(delta);
    if (cd <= 1e-12) continue;  // moving away from or along this bound
    const double ratio = std::max(0.0, d(i) - C.row(i).dot(x)) / cd;
    if (ratio < out.alpha) {
      out.alpha = ratio;
      out.blocking = static_cast<int>(i);
    }
  }
  return out;
}

QpResult solve_qp_as(const QpProblem& qp, const AsOptions& opts) {
  const Eigen::Index m = qp.C_ineq.rows();
  QpResult res;

  Vector x;
  if (opts.start) {
    x = *opts.start;
  } else {
    auto base = base_point(qp);
    if (!base) {
      res.x = Vector::Zero(qp.n);
      res.status = SolveStatus::Infeasible;
      return res;
    }
    x = *base;
  }

  Matrix Ae = qp.A_eq;
  Vector be = qp.b_eq;
  bool reduced = false;

  // Start from the inequality rows tight at the base point, kept
  // independent of the equality block.
  ActiveSet active;
  if (m > 0) {
    Matrix W = Ae;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::abs(qp.C_ineq.row(i).dot(x) - qp.d_ineq(i)) > kActiveTol) continue;
      if (!independent_with(W, qp.C_ineq.row(i).transpose())) continue;
      active.indices.push_back(static_cast<int>(i));
      W = working_rows(Ae, qp.C_ineq, active);
    }
  }

  int max_iter = opts.max_iter > 0
                     ? opts.max_iter
                     : 100 + 10 * (qp.n + static_cast<int>(m));
  res.status = SolveStatus::IterationLimit;
  for (int it = 0; it < max_iter; ++it) {
    const Vector grad = qp.Q * x - qp.g;
    Matrix W = working_rows(Ae, qp.C_ineq, active);

    Vector delta, lambda;
    try {
      std::tie(delta, lambda) = eq_subproblem(qp.Q, grad, W);
    } catch (const SingularMatrix&) {
      if (reduced) throw;
      auto red = reduce_equalities(qp.A_eq, qp.b_eq);
      if (!red) {
        res.x = std::move(x);
        res.status = SolveStatus::Infeasible;
        res.iterations = it;
        return res;
      }
      Ae = red->A;
      be = red->b;
      reduced = true;
      W = working_rows(Ae, qp.C_ineq, active);
      std::tie(delta, lambda) = eq_subproblem(qp.Q, grad, W);
    }
    ++res.iterations;
    if (opts.trace) opts.trace(x, active.indices);

    if (delta.lpNorm<Eigen::Infinity>() <= kZeroStep) {
      // Stationary on the working set; examine inequality multipliers.
      int worst = -1;
      double worst_val = -kLambdaTol;
      for (size_t k = 0; k < active.indices.size(); ++k) {
        const double lk = lambda(Ae.rows() + k);
        if (lk < worst_val) {
          worst_val = lk;
          worst = static_cast<int>(k);
        }
      }
      if (worst < 0) {
        res.status = SolveStatus::Optimal;
        break;
      }
      active.indices.erase(active.indices.begin() + worst);
      continue;
    }

    const StepLength step = step_length_alpha(qp.C_ineq, qp.d_ineq, x, delta, active);
    x += step.alpha * delta;
    if (step.alpha < 1.0 && step.blocking)
      active.indices.push_back(*step.blocking);
  }

  res.x = std::move(x);
  res.objective = qp_objective(qp, res.x);
  return res;
}

}  // namespace tabsolve
