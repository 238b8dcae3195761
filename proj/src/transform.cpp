#include "tabsolve/transform.hpp"

namespace tabsolve {

namespace {

// Row of coefficients over n columns; GE rows are returned negated so every
// inequality reads "<= rhs".
Vector dense_row(const Constraint& c, int n, bool negate) {
  Vector row = Vector::Zero(n);
  for (const Term& t : c.terms) row(t.var) = negate ? -t.coeff : t.coeff;
  return row;
}

int soft_count(const LayoutSpec& spec) {
  int k = 0;
  for (const Constraint& c : spec.constraints)
    if (!c.hard()) ++k;
  return k;
}

}  // namespace

QpProblem to_qp(const LayoutSpec& spec) {
  const int nv = spec.var_count;
  const int ns = soft_count(spec);
  QpProblem qp;
  qp.orig_vars = nv;
  qp.n = nv + ns;
  qp.Q = Matrix::Zero(qp.n, qp.n);
  qp.g = Vector::Zero(qp.n);

  std::vector<Vector> eq_rows, ineq_rows;
  std::vector<double> eq_rhs, ineq_rhs;
  int slack = nv;
  for (const Constraint& c : spec.constraints) {
    const bool neg = c.rel == Relation::GE;
    Vector row = dense_row(c, qp.n, neg);
    double rhs = neg ? -c.rhs : c.rhs;
    if (c.hard()) {
      qp.slack_col.push_back(-1);
      if (c.rel == Relation::EQ) {
        qp.rows.push_back({true, static_cast<int>(eq_rows.size())});
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(rhs);
      } else {
        qp.rows.push_back({false, static_cast<int>(ineq_rows.size())});
        ineq_rows.push_back(std::move(row));
        ineq_rhs.push_back(rhs);
      }
      continue;
    }
    qp.Q(slack, slack) = 2.0 * *c.penalty;
    qp.slack_col.push_back(slack);
    if (c.rel == Relation::EQ) {
      row(slack) = 1.0;  // a'x + s = b, s free
      qp.rows.push_back({true, static_cast<int>(eq_rows.size())});
      eq_rows.push_back(std::move(row));
      eq_rhs.push_back(rhs);
    } else {
      row(slack) = -1.0;  // a'x - s <= b, s >= 0
      qp.rows.push_back({false, static_cast<int>(ineq_rows.size())});
      ineq_rows.push_back(std::move(row));
      ineq_rhs.push_back(rhs);
      Vector bound = Vector::Zero(qp.n);
      bound(slack) = -1.0;
      ineq_rows.push_back(std::move(bound));
      ineq_rhs.push_back(0.0);
    }
    ++slack;
  }

  qp.A_eq.resize(eq_rows.size(), qp.n);
  qp.b_eq.resize(eq_rows.size());
  for (size_t i = 0; i < eq_rows.size(); ++i) {
    qp.A_eq.row(i) = eq_rows[i];
    qp.b_eq(i) = eq_rhs[i];
  }
  qp.C_ineq.resize(ineq_rows.size(), qp.n);
  qp.d_ineq.resize(ineq_rows.size());
  for (size_t i = 0; i < ineq_rows.size(); ++i) {
    qp.C_ineq.row(i) = ineq_rows[i];
    qp.d_ineq(i) = ineq_rhs[i];
  }
  return qp;
}

LpProblem to_lp(const LayoutSpec& spec) {
  const int nv = spec.var_count;
  LpProblem lp;
  lp.orig_vars = nv;

  // Count slack columns: 2 per soft EQ, 1 per soft LE/GE.
  int ncols = nv;
  for (const Constraint& c : spec.constraints)
    if (!c.hard()) ncols += c.rel == Relation::EQ ? 2 : 1;

  lp.c = Vector::Zero(ncols);
  lp.nonneg.assign(ncols, false);

  std::vector<Vector> eq_rows, ineq_rows;
  std::vector<double> eq_rhs, ineq_rhs;
  int slack = nv;
  for (const Constraint& c : spec.constraints) {
    const bool neg = c.rel == Relation::GE;
    Vector row = dense_row(c, ncols, neg);
    double rhs = neg ? -c.rhs : c.rhs;
    if (c.hard()) {
      lp.split_map.emplace_back(-1, -1);
      if (c.rel == Relation::EQ) {
        lp.rows.push_back({true, static_cast<int>(eq_rows.size())});
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(rhs);
      } else {
        lp.rows.push_back({false, static_cast<int>(ineq_rows.size())});
        ineq_rows.push_back(std::move(row));
        ineq_rhs.push_back(rhs);
      }
      continue;
    }
    if (c.rel == Relation::EQ) {
      row(slack) = 1.0;       // + s_plus
      row(slack + 1) = -1.0;  // - s_minus
      lp.c(slack) = lp.c(slack + 1) = *c.penalty;
      lp.nonneg[slack] = lp.nonneg[slack + 1] = true;
      lp.split_map.emplace_back(slack, slack + 1);
      lp.rows.push_back({true, static_cast<int>(eq_rows.size())});
      eq_rows.push_back(std::move(row));
      eq_rhs.push_back(rhs);
      slack += 2;
    } else {
      row(slack) = -1.0;  // a'x - s <= b, s >= 0 absorbs the violation
      lp.c(slack) = *c.penalty;
      lp.nonneg[slack] = true;
      lp.split_map.emplace_back(slack, -1);
      lp.rows.push_back({false, static_cast<int>(ineq_rows.size())});
      ineq_rows.push_back(std::move(row));
      ineq_rhs.push_back(rhs);
      slack += 1;
    }
  }

  lp.A_eq.resize(eq_rows.size(), ncols);
  lp.b_eq.resize(eq_rows.size());
  for (size_t i = 0; i < eq_rows.size(); ++i) {
    lp.A_eq.row(i) = eq_rows[i];
    lp.b_eq(i) = eq_rhs[i];
  }
  lp.C_ineq.resize(ineq_rows.size(), ncols);
  lp.d_ineq.resize(ineq_rows.size());
  for (size_t i = 0; i < ineq_rows.size(); ++i) {
    lp.C_ineq.row(i) = ineq_rows[i];
    lp.d_ineq(i) = ineq_rhs[i];
  }
  return lp;
}

}  // namespace tabsolve
