#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "tabsolve/model.hpp"
#include "tabsolve/transform.hpp"

namespace tabsolve::testing {

inline const char* kThreeButton =
    "vars 3\n"
    "name 0 w1\n"
    "name 1 w2\n"
    "name 2 w3\n"
    "c H x0*1 x1*1 x2*1 EQ 300\n"
    "c S:1 x0*1 EQ 120\n"
    "c S:1 x1*1 EQ 120\n"
    "c S:1 x2*1 EQ 120\n";

inline LayoutSpec three_button() { return parse_spec(kThreeButton); }

inline LayoutSpec hard_only(const LayoutSpec& spec) {
  LayoutSpec out;
  out.var_count = spec.var_count;
  out.var_names = spec.var_names;
  for (const Constraint& c : spec.constraints)
    if (c.hard()) out.constraints.push_back(c);
  return out;
}

// Random spec with small integer-ish data; always has at least one
// constraint, penalties positive.
inline LayoutSpec random_spec(std::mt19937_64& rng, int max_vars = 8,
                              int max_constraints = 10) {
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  std::uniform_real_distribution<double> rhs(-10.0, 10.0);
  std::uniform_real_distribution<double> pen(0.1, 5.0);

  LayoutSpec spec;
  spec.var_count = 1 + static_cast<int>(rng() % max_vars);
  spec.var_names.assign(spec.var_count, "");
  for (int i = 0; i < spec.var_count; ++i)
    if (rng() % 3 == 0) spec.var_names[i] = "v" + std::to_string(i);

  const int nc = 1 + static_cast<int>(rng() % max_constraints);
  for (int k = 0; k < nc; ++k) {
    Constraint c;
    const int nt = 1 + static_cast<int>(rng() % std::min(3, spec.var_count));
    std::vector<int> vars(spec.var_count);
    for (int i = 0; i < spec.var_count; ++i) vars[i] = i;
    std::shuffle(vars.begin(), vars.end(), rng);
    for (int i = 0; i < nt; ++i) {
      double a = coeff(rng);
      if (a == 0.0) a = 1.0;
      c.terms.push_back({vars[i], a});
    }
    c.rel = static_cast<Relation>(rng() % 3);
    c.rhs = rhs(rng);
    if (rng() % 2) c.penalty = pen(rng);
    spec.constraints.push_back(std::move(c));
  }
  return spec;
}

// Feasible random QP with strictly interior inequality region:
// Q = M'M + I (PD), b_eq/d_ineq built around a known point.
inline QpProblem random_feasible_qp(std::mt19937_64& rng, int max_n = 6,
                                    int max_ineq = 8) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QpProblem qp;
  qp.n = 1 + static_cast<int>(rng() % max_n);
  qp.orig_vars = qp.n;

  Matrix M(qp.n, qp.n);
  for (int i = 0; i < qp.n; ++i)
    for (int j = 0; j < qp.n; ++j) M(i, j) = u(rng);
  qp.Q = M.transpose() * M + Matrix::Identity(qp.n, qp.n);
  qp.g = Vector::NullaryExpr(qp.n, [&] { return 2.0 * u(rng); });

  Vector hat = Vector::NullaryExpr(qp.n, [&] { return 2.0 * u(rng); });

  const int me = qp.n > 1 ? static_cast<int>(rng() % 2) : 0;
  qp.A_eq.resize(me, qp.n);
  for (int i = 0; i < me; ++i)
    for (int j = 0; j < qp.n; ++j) qp.A_eq(i, j) = u(rng);
  qp.b_eq = qp.A_eq * hat;

  const int mi = static_cast<int>(rng() % (max_ineq + 1));
  qp.C_ineq.resize(mi, qp.n);
  qp.d_ineq.resize(mi);
  for (int i = 0; i < mi; ++i) {
    for (int j = 0; j < qp.n; ++j) qp.C_ineq(i, j) = u(rng);
    qp.d_ineq(i) = qp.C_ineq.row(i).dot(hat) + 0.2 + 1.8 * (u(rng) * 0.5 + 0.5);
  }
  qp.slack_col.clear();
  qp.rows.clear();
  return qp;
}

// General random LP, small enough for lp_oracle (<= 12 standard-form
// columns); statuses vary across instances.
inline LpProblem random_small_lp(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  LpProblem lp;
  while (true) {
    const int nv = 1 + static_cast<int>(rng() % 4);
    const int me = static_cast<int>(rng() % 2);
    const int mi = static_cast<int>(rng() % 5);
    lp.orig_vars = nv;
    lp.nonneg.assign(nv, false);
    int cols = 0;
    for (int j = 0; j < nv; ++j) {
      lp.nonneg[j] = rng() % 2 == 0;
      cols += lp.nonneg[j] ? 1 : 2;
    }
    cols += mi;  // one slack per inequality row
    if (cols > 12) continue;

    lp.c = Vector::NullaryExpr(nv, [&] { return u(rng); });
    lp.A_eq.resize(me, nv);
    lp.b_eq.resize(me);
    for (int i = 0; i < me; ++i) {
      for (int j = 0; j < nv; ++j) lp.A_eq(i, j) = std::round(u(rng));
      lp.b_eq(i) = std::round(2.0 * u(rng));
    }
    lp.C_ineq.resize(mi, nv);
    lp.d_ineq.resize(mi);
    for (int i = 0; i < mi; ++i) {
      for (int j = 0; j < nv; ++j) lp.C_ineq(i, j) = std::round(u(rng));
      lp.d_ineq(i) = std::round(3.0 * u(rng));
    }
    lp.split_map.clear();
    lp.rows.clear();
    return lp;
  }
}

}  // namespace tabsolve::testing
