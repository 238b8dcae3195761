#include "tabsolve/linalg.hpp"

#include <algorithm>
#include <vector>

namespace tabsolve {

Vector lu_solve(const Matrix& A, const Vector& b) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("lu_solve: dimension mismatch");
  if (A.rows() == 0) return Vector(0);

  Eigen::PartialPivLU<Matrix> lu(A);
  // Pivots of the factorization sit on the diagonal of U.
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() < kPivotTol)
    throw SingularMatrix("lu_solve: pivot below 1e-12");
  Vector x = lu.solve(b);
  if (!x.allFinite()) throw SingularMatrix("lu_solve: non-finite solution");
  return x;
}

std::pair<Vector, Vector> solve_kkt(const Matrix& Q, const Matrix& A,
                                    const Vector& r1, const Vector& r2) {
  const Eigen::Index n = Q.rows();
  const Eigen::Index m = A.rows();
  if (Q.cols() != n || (m > 0 && A.cols() != n) || r1.size() != n || r2.size() != m)
    throw std::invalid_argument("solve_kkt: dimension mismatch");

  Matrix K = Matrix::Zero(n + m, n + m);
  K.topLeftCorner(n, n) = Q;
  if (m > 0) {
    K.topRightCorner(n, m) = A.transpose();
    K.bottomLeftCorner(m, n) = A;
  }
  Vector rhs(n + m);
  rhs.head(n) = r1;
  rhs.tail(m) = r2;

  Vector sol = lu_solve(K, rhs);
  return {sol.head(n), sol.tail(m)};
}

std::optional<ReducedEq> reduce_equalities(const Matrix& A, const Vector& b) {
  const Eigen::Index p = A.rows();
  const Eigen::Index n = A.cols();
  if (p == 0) return ReducedEq{Matrix(0, n), Vector(0), Vector::Zero(n)};

  Eigen::ColPivHouseholderQR<Matrix> qr(A.transpose());
  const Eigen::Index r = qr.rank();
  std::vector<Eigen::Index> rows(qr.colsPermutation().indices().data(),
                                 qr.colsPermutation().indices().data() + p);
  rows.resize(r);
  std::sort(rows.begin(), rows.end());

  ReducedEq red;
  red.A.resize(r, n);
  red.b.resize(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    red.A.row(i) = A.row(rows[i]);
    red.b(i) = b(rows[i]);
  }
  red.x0 = r > 0 ? Vector(red.A.colPivHouseholderQr().solve(red.b))
                 : Vector(Vector::Zero(n));
  if (((A * red.x0 - b).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + b.cwiseAbs().maxCoeff())))
    return std::nullopt;
  return red;
}

}  // namespace tabsolve
