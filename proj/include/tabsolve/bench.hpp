#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tabsolve/generator.hpp"
#include "tabsolve/interior_point.hpp"
#include "tabsolve/model.hpp"
#include "tabsolve/transform.hpp"

namespace tabsolve {

enum class Strategy { InteriorPoint, ActiveSet, Simplex };

// CLI tokens: "ip", "as", "simplex".
const char* to_token(Strategy s);
std::optional<Strategy> strategy_from_token(const std::string& token);

struct SolveOptions {
  BarrierParams barrier{};  // interior-point knobs (mu, eps, ...)
  int max_iter = 0;         // active-set / simplex cap override; 0 = auto
};

// Lowers the spec (QP for ip/as, LP for simplex), solves, and reports in
// layout terms: x truncated to the spec's variables, one residual per
// constraint.  A nominally Optimal result with a hard residual above 1e-6
// is demoted to IterationLimit so the Solution invariant holds.
Solution solve_spec(const LayoutSpec& spec, Strategy strategy,
                    const SolveOptions& opts = {});

struct BenchRecord {
  Strategy strategy = Strategy::InteriorPoint;
  int constraints = 0;
  int run = 0;  // per-size occurrence counter
  double time_ms = 0;
  int suboptimal = 0;
  int iterations = 0;
  std::string status;  // solver status, or "error" if the solve threw
};

// One record per (spec, strategy): transform outside the timer, wall-clock
// the solve only, median of `repeats` timings, sequential throughout.  The
// first spec is solved twice untimed per strategy as warm-up.
std::vector<BenchRecord> run_bench(const std::vector<GeneratedSpec>& specs,
                                   const std::vector<Strategy>& strategies,
                                   double tol = 1e-3, int repeats = 3,
                                   const SolveOptions& opts = {});

// Header exactly: strategy,constraints,run,time_ms,suboptimal,iterations,status
void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
std::vector<BenchRecord> read_csv(std::istream& in);

struct RegressionFit {
  std::array<double, 4> beta{};  // T = b0 + b1 c + b2 c^2 + b3 c^3
  double r_squared = 0;
};

struct Degenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Least squares on a column-scaled Vandermonde system via normal equations.
// R^2 = 1 - SSres/SStot, defined as 1 when SStot = 0.
// Throws Degenerate on fewer than 5 points or fewer than 4 distinct c.
RegressionFit fit_cubic(const std::vector<std::pair<double, double>>& points);

// Aligned text table: strategy, b0..b3, R^2.
std::string format_fit_table(
    const std::vector<std::pair<Strategy, RegressionFit>>& fits);

// Brute-force reference for small QPs (n <= 10, <= 12 inequality rows,
// Q PD on the equality null space): tries every subset of inequality rows
// as the active set, keeps KKT solutions that are primal feasible with
// nonnegative inequality multipliers, returns the best; nullopt if no
// candidate is feasible.
std::optional<Vector> qp_oracle(const QpProblem& qp);

struct LpOracleResult {
  SolveStatus status = SolveStatus::Optimal;  // Optimal|Infeasible|Unbounded
  double objective = 0;
};

// Brute-force reference for small LPs (<= 12 standard-form columns):
// enumerates basic solutions for the optimum and sign-definite null
// vectors of column subsets for the unbounded-ray test.
LpOracleResult lp_oracle(const LpProblem& lp);

}  // namespace tabsolve
