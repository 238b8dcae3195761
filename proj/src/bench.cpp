#include "tabsolve/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "tabsolve/active_set.hpp"
#include "tabsolve/simplex.hpp"

namespace tabsolve {

namespace {

Solution from_qp(const LayoutSpec& spec, const QpResult& r) {
  Solution s;
  s.x = r.x.size() >= spec.var_count ? Vector(r.x.head(spec.var_count))
                                     : Vector::Zero(spec.var_count);
  s.status = r.status;
  s.iterations = r.iterations;
  return s;
}

void finish(const LayoutSpec& spec, Solution& s) {
  s.errors.resize(spec.constraints.size());
  for (size_t i = 0; i < spec.constraints.size(); ++i)
    s.errors(i) = residual(spec.constraints[i], s.x);
  if (s.status == SolveStatus::Optimal) {
    for (size_t i = 0; i < spec.constraints.size(); ++i)
      if (spec.constraints[i].hard() && s.errors(i) > 1e-6) {
        s.status = SolveStatus::IterationLimit;
        break;
      }
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

const char* to_token(Strategy s) {
  switch (s) {
    case Strategy::InteriorPoint: return "ip";
    case Strategy::ActiveSet: return "as";
    case Strategy::Simplex: return "simplex";
  }
  return "?";
}

std::optional<Strategy> strategy_from_token(const std::string& token) {
  if (token == "ip") return Strategy::InteriorPoint;
  if (token == "as") return Strategy::ActiveSet;
  if (token == "simplex") return Strategy::Simplex;
  return std::nullopt;
}

Solution solve_spec(const LayoutSpec& spec, Strategy strategy,
                    const SolveOptions& opts) {
  Solution s;
  switch (strategy) {
    case Strategy::InteriorPoint:
      s = from_qp(spec, solve_qp_ip(to_qp(spec), opts.barrier));
      break;
    case Strategy::ActiveSet: {
      AsOptions ao;
      ao.max_iter = opts.max_iter;
      s = from_qp(spec, solve_qp_as(to_qp(spec), ao));
      break;
    }
    case Strategy::Simplex: {
      const LpProblem lp = to_lp(spec);
      const LpResult r = solve_lp(lp, opts.max_iter);
      s.x = r.x.size() >= spec.var_count ? Vector(r.x.head(spec.var_count))
                                         : Vector::Zero(spec.var_count);
      s.status = r.status;
      s.iterations = r.iterations;
      break;
    }
  }
  finish(spec, s);
  return s;
}

std::vector<BenchRecord> run_bench(const std::vector<GeneratedSpec>& specs,
                                   const std::vector<Strategy>& strategies,
                                   double tol, int repeats,
                                   const SolveOptions& opts) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  records.reserve(specs.size() * strategies.size());

  // Allocator/cache warm-up: two untimed solves of the first spec per
  // strategy, results discarded.
  if (!specs.empty()) {
    for (Strategy st : strategies)
      for (int k = 0; k < 2; ++k) {
        try {
          solve_spec(specs.front().spec, st, opts);
        } catch (const std::exception&) {
        }
      }
  }

  for (const auto& g : specs) {
    for (Strategy st : strategies) {
      BenchRecord rec;
      rec.strategy = st;
      rec.constraints = g.constraints;
      rec.run = g.index;
      std::vector<double> times;
      times.reserve(repeats);
      bool have_solution = false;
      for (int rep = 0; rep < std::max(1, repeats); ++rep) {
        try {
          // Lowering happens outside the timed region.
          if (st == Strategy::Simplex) {
            const LpProblem lp = to_lp(g.spec);
            const auto t0 = clock::now();
            const LpResult r = solve_lp(lp, opts.max_iter);
            const auto t1 = clock::now();
            times.push_back(
                std::chrono::duration<double, std::milli>(t1 - t0).count());
            if (!have_solution) {
              Solution s;
              s.x = r.x.size() >= g.spec.var_count
                        ? Vector(r.x.head(g.spec.var_count))
                        : Vector::Zero(g.spec.var_count);
              s.status = r.status;
              s.iterations = r.iterations;
              finish(g.spec, s);
              rec.suboptimal = count_suboptimal(g.spec, s.x, tol);
              rec.iterations = s.iterations;
              rec.status = to_string(s.status);
              have_solution = true;
            }
          } else {
            const QpProblem qp = to_qp(g.spec);
            QpResult r;
            if (st == Strategy::InteriorPoint) {
              const auto t0 = clock::now();
              r = solve_qp_ip(qp, opts.barrier);
              const auto t1 = clock::now();
              times.push_back(
                  std::chrono::duration<double, std::milli>(t1 - t0).count());
            } else {
              AsOptions ao;
              ao.max_iter = opts.max_iter;
              const auto t0 = clock::now();
              r = solve_qp_as(qp, ao);
              const auto t1 = clock::now();
              times.push_back(
                  std::chrono::duration<double, std::milli>(t1 - t0).count());
            }
            if (!have_solution) {
              Solution s = from_qp(g.spec, r);
              finish(g.spec, s);
              rec.suboptimal = count_suboptimal(g.spec, s.x, tol);
              rec.iterations = s.iterations;
              rec.status = to_string(s.status);
              have_solution = true;
            }
          }
        } catch (const std::exception&) {
          if (!have_solution) {
            rec.status = "error";
            have_solution = true;
          }
        }
      }
      rec.time_ms = times.empty() ? 0.0 : median(std::move(times));
      records.push_back(std::move(rec));
    }
  }
  return records;
}

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  out << "strategy,constraints,run,time_ms,suboptimal,iterations,status\n";
  for (const auto& r : records)
    out << to_token(r.strategy) << ',' << r.constraints << ',' << r.run << ','
        << format_double(r.time_ms) << ',' << r.suboptimal << ','
        << r.iterations << ',' << r.status << '\n';
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> records;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("csv: empty input");
  if (line == "strategy,constraints,run,time_ms,suboptimal,iterations,status\r")
    line.pop_back();
  if (line != "strategy,constraints,run,time_ms,suboptimal,iterations,status")
    throw std::runtime_error("csv: unexpected header: " + line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7)
      throw std::runtime_error("csv: bad row at line " +
                               std::to_string(lineno));
    BenchRecord r;
    auto st = strategy_from_token(fields[0]);
    if (!st)
      throw std::runtime_error("csv: unknown strategy at line " +
                               std::to_string(lineno));
    r.strategy = *st;
    r.constraints = std::stoi(fields[1]);
    r.run = std::stoi(fields[2]);
    r.time_ms = std::stod(fields[3]);
    r.suboptimal = std::stoi(fields[4]);
    r.iterations = std::stoi(fields[5]);
    r.status = fields[6];
    records.push_back(std::move(r));
  }
  return records;
}

RegressionFit fit_cubic(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 5)
    throw Degenerate("fit_cubic: need at least 5 points");
  std::vector<double> cs;
  for (const auto& p : points) cs.push_back(p.first);
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  if (cs.size() < 4)
    throw Degenerate("fit_cubic: need at least 4 distinct abscissae");

  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  Matrix X(n, 4);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = points[i].first;
    X(i, 0) = 1.0;
    X(i, 1) = c;
    X(i, 2) = c * c;
    X(i, 3) = c * c * c;
    y(i) = points[i].second;
  }
  // Scale each power column by its max magnitude; c up to a few thousand
  // makes the raw normal equations hopeless.
  Vector scale(4);
  for (int j = 0; j < 4; ++j) {
    scale(j) = X.col(j).cwiseAbs().maxCoeff();
    if (scale(j) <= 0) scale(j) = 1.0;
    X.col(j) /= scale(j);
  }
  const Matrix N = X.transpose() * X;
  const Vector rhs = X.transpose() * y;
  const Vector bs = lu_solve(N, rhs);

  RegressionFit fit;
  for (int j = 0; j < 4; ++j) fit.beta[j] = bs(j) / scale(j);

  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = (y - X * bs).squaredNorm();
  fit.r_squared = ss_tot <= 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

std::string format_fit_table(
    const std::vector<std::pair<Strategy, RegressionFit>>& fits) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "strategy";
  for (const char* h : {"beta0", "beta1", "beta2", "beta3", "R^2"})
    out << std::right << std::setw(14) << h;
  out << '\n';
  out << std::setprecision(6) << std::scientific;
  for (const auto& [st, fit] : fits) {
    out << std::left << std::setw(10) << to_token(st);
    for (double b : fit.beta) out << std::right << std::setw(14) << b;
    out << std::right << std::setw(14) << std::fixed << std::setprecision(4)
        << fit.r_squared << std::scientific << std::setprecision(6);
    out << '\n';
  }
  return out.str();
}

std::optional<Vector> qp_oracle(const QpProblem& qp) {
  const int m = static_cast<int>(qp.C_ineq.rows());
  const Eigen::Index me = qp.A_eq.rows();
  std::optional<Vector> best;
  double best_obj = 0;

  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> act;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) act.push_back(i);

    Matrix W(me + act.size(), qp.n);
    Vector w(me + act.size());
    if (me > 0) {
      W.topRows(me) = qp.A_eq;
      w.head(me) = qp.b_eq;
    }
    for (size_t k = 0; k < act.size(); ++k) {
      W.row(me + k) = qp.C_ineq.row(act[k]);
      w(me + k) = qp.d_ineq(act[k]);
    }

    Vector x, lambda;
    try {
      std::tie(x, lambda) = solve_kkt(qp.Q, W, qp.g, w);
    } catch (const SingularMatrix&) {
      continue;
    }

    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      if (qp.C_ineq.row(i).dot(x) > qp.d_ineq(i) + 1e-8) ok = false;
    for (size_t k = 0; k < act.size() && ok; ++k)
      if (lambda(me + k) < -1e-8) ok = false;
    if (me > 0 && ok &&
        (qp.A_eq * x - qp.b_eq).lpNorm<Eigen::Infinity>() > 1e-8)
      ok = false;
    if (!ok) continue;

    const double obj = qp_objective(qp, x);
    if (!best || obj < best_obj - 1e-12) {
      best = x;
      best_obj = obj;
    }
  }
  return best;
}

namespace {

// All size-k column subsets, lexicographic.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) {
    f(idx);
    return;
  }
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

LpOracleResult lp_oracle(const LpProblem& lp) {
  const StandardForm sf = to_standard_form(lp);
  const int ncols = static_cast<int>(sf.A.cols());
  const int nrows = static_cast<int>(sf.A.rows());
  if (ncols > 12)
    throw std::invalid_argument("lp_oracle: more than 12 standard-form columns");

  LpOracleResult res;
  res.status = SolveStatus::Infeasible;

  if (nrows == 0) {
    // No rows: x = 0 is optimal at 0 unless some column pays to grow.
    res.status = SolveStatus::Optimal;
    res.objective = 0;
    for (int j = 0; j < ncols; ++j)
      if (sf.c(j) < -1e-9) res.status = SolveStatus::Unbounded;
    return res;
  }

  Eigen::ColPivHouseholderQR<Matrix> qr(sf.A);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());

  // Basic solutions: rank-many columns, solved in the least-squares sense,
  // kept when they reproduce b on every row and are nonnegative.
  for_each_subset(ncols, std::min(rank, ncols), [&](const std::vector<int>& cols) {
    if (cols.empty()) {  // rank 0: x = 0 is the only candidate
      if (sf.b.lpNorm<Eigen::Infinity>() <= 1e-8) {
        res.status = SolveStatus::Optimal;
        res.objective = 0;
      }
      return;
    }
    Matrix B(nrows, cols.size());
    for (size_t k = 0; k < cols.size(); ++k) B.col(k) = sf.A.col(cols[k]);
    Eigen::ColPivHouseholderQR<Matrix> bqr(B);
    bqr.setThreshold(1e-10);
    if (bqr.rank() < static_cast<int>(cols.size())) return;
    const Vector xb = bqr.solve(sf.b);
    if ((B * xb - sf.b).lpNorm<Eigen::Infinity>() > 1e-8) return;
    if ((xb.array() < -1e-9).any()) return;
    double obj = 0;
    for (size_t k = 0; k < cols.size(); ++k) obj += sf.c(cols[k]) * xb(k);
    if (res.status == SolveStatus::Infeasible || obj < res.objective - 1e-12) {
      res.status = SolveStatus::Optimal;
      res.objective = obj;
    }
  });
  if (res.status == SolveStatus::Infeasible) return res;

  // Extreme rays: column subsets whose matrix has a one-dimensional,
  // sign-definite null space; a negative-cost ray makes the LP unbounded.
  bool unbounded = false;
  for (int k = 1; k <= std::min(rank + 1, ncols) && !unbounded; ++k) {
    for_each_subset(ncols, k, [&](const std::vector<int>& cols) {
      if (unbounded) return;
      Matrix T(nrows, cols.size());
      for (size_t j = 0; j < cols.size(); ++j) T.col(j) = sf.A.col(cols[j]);
      Eigen::FullPivLU<Matrix> lu(T);
      lu.setThreshold(1e-10);
      if (lu.rank() != static_cast<int>(cols.size()) - 1) return;
      const Matrix null_space = lu.kernel();
      if (null_space.cols() != 1) return;
      Vector v = null_space.col(0);
      if ((v.array() >= -1e-9).all()) {
        // keep as-is
      } else if ((v.array() <= 1e-9).all()) {
        v = -v;
      } else {
        return;
      }
      if (v.lpNorm<Eigen::Infinity>() < 1e-9) return;
      double cd = 0;
      for (size_t j = 0; j < cols.size(); ++j) cd += sf.c(cols[j]) * v(j);
      if (cd < -1e-9) unbounded = true;
    });
  }
  if (unbounded) {
    res.status = SolveStatus::Unbounded;
    res.objective = 0;
  }
  return res;
}

}  // namespace tabsolve
