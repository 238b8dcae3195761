#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <utility>

namespace tabsolve {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Thrown when a pivot magnitude drops below kPivotTol during factorization,
// or when a solve produces non-finite entries.
struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kPivotTol = 1e-12;

// Solves A x = b by LU with partial (row) pivoting. A must be square.
// Throws SingularMatrix if any pivot magnitude is below kPivotTol.
Vector lu_solve(const Matrix& A, const Vector& b);

// Solves the KKT system
//   Q x + A^T lambda = r1
//   A x              = r2
// via lu_solve on the bordered (n+m) x (n+m) matrix [[Q, A^T], [A, 0]].
// Returns (x, lambda). A may have zero rows.
std::pair<Vector, Vector> solve_kkt(const Matrix& Q, const Matrix& A,
                                    const Vector& r1, const Vector& r2);

// A consistent, row-independent equality system extracted from A x = b.
struct ReducedEq {
  Matrix A;   // independent row subset of the input, original order
  Vector b;
  Vector x0;  // one exact solution of the full system
};

// Rank-reveals A via column-pivoted QR of A^T, keeps an independent row
// subset, and checks the dropped rows for consistency. Returns nullopt if
// the system A x = b has no solution.
std::optional<ReducedEq> reduce_equalities(const Matrix& A, const Vector& b);

}  // namespace tabsolve
