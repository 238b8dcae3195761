#include "tabsolve/interior_point.hpp"

#include <cmath>
#include <limits>

namespace tabsolve {

namespace {

constexpr double kEqTol = 1e-8;

// t*f0 + phi at x, +inf outside the strict interior.
double composite_value(const QpProblem& qp, const Vector& x, double t) {
  double v = t * (0.5 * x.dot(qp.Q * x) - qp.g.dot(x));
  if (qp.C_ineq.rows() > 0) {
    Vector gaps = qp.d_ineq - qp.C_ineq * x;
    if ((gaps.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    v -= gaps.array().log().sum();
  }
  return v;
}

// Core Newton loop; reg > 0 adds a Tikhonov term to the Hessian (used only
// by phase-I, whose linear objective leaves the KKT system singular on
// translation-degenerate faces).
CenteringResult center(const QpProblem& qp, Vector x, double t,
                       const BarrierParams& params, double reg) {
  const Eigen::Index m = qp.C_ineq.rows();
  CenteringResult res;
  if (m > 0 && ((qp.d_ineq - qp.C_ineq * x).array() <= 0.0).any())
    throw std::invalid_argument("centering_step: x not strictly feasible");

  for (int it = 0; it < params.max_inner; ++it) {
    Vector grad = t * (qp.Q * x - qp.g);
    Vector gaps;
    Matrix H = t * qp.Q;
    if (m > 0) {
      gaps = qp.d_ineq - qp.C_ineq * x;
      Vector inv = gaps.cwiseInverse();
      grad += qp.C_ineq.transpose() * inv;
      H += qp.C_ineq.transpose() * inv.array().square().matrix().asDiagonal() *
           qp.C_ineq;
    }
    if (reg > 0.0) H.diagonal().array() += reg;

    Vector r2 = qp.b_eq - qp.A_eq * x;
    const bool eq_ok = qp.A_eq.rows() == 0 || r2.cwiseAbs().maxCoeff() <= 1e-10;

    if (grad.isZero(0.0) && eq_ok) {  // constant objective, x already optimal
      res.converged = true;
      break;
    }

    auto [delta, nu] = solve_kkt(H, qp.A_eq, -grad, r2);
    const double decrement2 = delta.dot(H * delta);
    const double f0 = composite_value(qp, x, t);
    res.composite.push_back(f0);
    // Below 4 ulp of the composite no decrease is representable in double,
    // so a decrement under that floor is converged no matter what
    // newton_tol asks for (large t inflates the composite's magnitude).
    const double stop =
        std::max(params.newton_tol,
                 4.0 * std::numeric_limits<double>::epsilon() * std::abs(f0));
    if (0.5 * decrement2 <= stop && eq_ok) {
      res.converged = true;
      res.composite.pop_back();
      break;
    }
    ++res.newton_steps;

    // Fraction-to-boundary cap keeps all gaps strictly positive.
    double alpha = 1.0;
    if (m > 0) {
      Vector cd = qp.C_ineq * delta;
      for (Eigen::Index i = 0; i < m; ++i)
        if (cd(i) > 0.0) alpha = std::min(alpha, 0.99 * gaps(i) / cd(i));
    }
    if (eq_ok) {
      const double slope = grad.dot(delta);
      while (alpha > 1e-16 &&
             composite_value(qp, x + alpha * delta, t) > f0 + 1e-4 * alpha * slope)
        alpha *= 0.5;
    }
    // else: equality-restoring step, objective may rise; take it as capped.
    x += alpha * delta;
  }
  res.x = std::move(x);
  if (res.composite.empty() || !res.converged)
    res.composite.push_back(composite_value(qp, res.x, t));
  return res;
}

// Phase-I auxiliary QP over z = (x, s): min s subject to the original
// equalities, C x - s <= d, and a cap -s <= 1 that keeps it bounded.
QpProblem phase1_problem(const QpProblem& qp) {
  const Eigen::Index n = qp.n;
  const Eigen::Index m = qp.C_ineq.rows();
  QpProblem p1;
  p1.n = static_cast<int>(n) + 1;
  p1.orig_vars = p1.n;
  p1.Q = Matrix::Zero(n + 1, n + 1);
  p1.g = Vector::Zero(n + 1);
  p1.g(n) = -1.0;  // objective 0.5 z'Qz - g'z = s
  p1.A_eq = Matrix::Zero(qp.A_eq.rows(), n + 1);
  p1.A_eq.leftCols(n) = qp.A_eq;
  p1.b_eq = qp.b_eq;
  p1.C_ineq = Matrix::Zero(m + 1, n + 1);
  p1.C_ineq.topLeftCorner(m, n) = qp.C_ineq;
  p1.C_ineq.col(n).setConstant(-1.0);
  p1.d_ineq.resize(m + 1);
  p1.d_ineq.head(m) = qp.d_ineq;
  p1.d_ineq(m) = 1.0;
  return p1;
}

// Barrier phase-I over a problem whose A_eq rows are already independent
// and consistent, started from x0 on the equalities.
std::optional<Vector> interior_from(const QpProblem& qp, const Vector& x0,
                                    const BarrierParams& params) {
  const Eigen::Index m = qp.C_ineq.rows();
  if (m == 0) return x0;

  const QpProblem p1 = phase1_problem(qp);
  Vector z(qp.n + 1);
  z.head(qp.n) = x0;
  z(qp.n) = std::max(0.0, (qp.C_ineq * x0 - qp.d_ineq).maxCoeff()) + 1.0;

  BarrierParams pp = params;
  pp.eps = std::min(params.eps, 1e-10);
  double t = params.t0;
  for (int k = 0; k < params.max_outer; ++k) {
    z = center(p1, std::move(z), t, pp, 1e-8).x;
    if (z(qp.n) < -1e-6) break;  // safely interior already
    if (static_cast<double>(m + 1) / t < pp.eps) break;
    t *= params.mu;
  }
  Vector x = z.head(qp.n);
  if (m > 0 && (qp.C_ineq * x - qp.d_ineq).maxCoeff() >= -1e-9) return std::nullopt;
  return x;
}

}  // namespace

CenteringResult centering_step(const QpProblem& qp, const Vector& x, double t,
                               const BarrierParams& params) {
  return center(qp, x, t, params, 0.0);
}

std::optional<Vector> find_strictly_feasible(const QpProblem& qp,
                                             const BarrierParams& params) {
  auto red = reduce_equalities(qp.A_eq, qp.b_eq);
  if (!red) return std::nullopt;
  QpProblem r = qp;
  r.A_eq = red->A;
  r.b_eq = red->b;
  return interior_from(r, red->x0, params);
}

QpResult solve_qp_ip(const QpProblem& qp, const BarrierParams& params) {
  const Eigen::Index m = qp.C_ineq.rows();
  QpResult res;

  QpProblem work = qp;
  Vector x;
  if (m == 0) {
    // No barrier: the first centering is plain equality-constrained Newton
    // with the A_eq residual folded into the KKT right-hand side.
    x = Vector::Zero(qp.n);
    try {
      CenteringResult c = center(work, x, params.t0, params, 0.0);
      if ((work.A_eq.rows() > 0 &&
           (work.A_eq * c.x - work.b_eq).cwiseAbs().maxCoeff() >
               kEqTol * (1.0 + work.b_eq.cwiseAbs().maxCoeff())))
        throw SingularMatrix("ip: equality residual");
      res.x = c.x;
      res.status = c.converged ? SolveStatus::Optimal : SolveStatus::IterationLimit;
      res.iterations = 1;
      if (params.outer_trace) params.outer_trace(0, params.t0, res.x);
      res.objective = qp_objective(qp, res.x);
      return res;
    } catch (const SingularMatrix&) {
      auto red = reduce_equalities(qp.A_eq, qp.b_eq);
      if (!red) {
        res.x = Vector::Zero(qp.n);
        res.status = SolveStatus::Infeasible;
        return res;
      }
      work.A_eq = red->A;
      work.b_eq = red->b;
      x = red->x0;
      // retried below; a second Singular is a genuinely degenerate problem
    }
  } else {
    auto red = reduce_equalities(qp.A_eq, qp.b_eq);
    if (!red) {
      res.x = Vector::Zero(qp.n);
      res.status = SolveStatus::Infeasible;
      return res;
    }
    work.A_eq = red->A;
    work.b_eq = red->b;
    auto x0 = interior_from(work, red->x0, params);
    if (!x0) {
      res.x = Vector::Zero(qp.n);
      res.status = SolveStatus::Infeasible;
      return res;
    }
    x = *x0;
  }

  double t = params.t0;
  res.status = SolveStatus::IterationLimit;
  for (int k = 0; k < params.max_outer; ++k) {
    CenteringResult c = center(work, std::move(x), t, params, 0.0);
    x = std::move(c.x);
    ++res.iterations;
    if (params.outer_trace) params.outer_trace(k, t, x);
    if (!c.converged) break;
    if (static_cast<double>(m) / t < params.eps) {
      res.status = SolveStatus::Optimal;
      break;
    }
    t *= params.mu;
  }
  res.x = std::move(x);
  res.objective = qp_objective(qp, res.x);
  return res;
}

}  // namespace tabsolve
