#include <random>

#include "doctest.h"
#include "tabsolve/linalg.hpp"

using namespace tabsolve;

TEST_CASE("lu_solve: identity") {
  Vector b(3);
  b << 1, 2, 3;
  const Vector x = lu_solve(Matrix::Identity(3, 3), b);
  CHECK((x - b).lpNorm<Eigen::Infinity>() == doctest::Approx(0.0));
}

TEST_CASE("lu_solve: diagonal") {
  Matrix A(2, 2);
  A << 2, 0, 0, 4;
  Vector b(2);
  b << 2, 4;
  const Vector x = lu_solve(A, b);
  CHECK(x(0) == doctest::Approx(1.0));
  CHECK(x(1) == doctest::Approx(1.0));
}

TEST_CASE("lu_solve: rank-deficient throws") {
  Matrix A(2, 2);
  A << 1, 1, 2, 2;
  Vector b(2);
  b << 1, 2;
  CHECK_THROWS_AS(lu_solve(A, b), SingularMatrix);
}

TEST_CASE("lu_solve: residual bound on random well-conditioned systems") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + static_cast<int>(rng() % 8);
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = u(rng);
    A += static_cast<double>(n) * Matrix::Identity(n, n);  // well-conditioned
    Vector b(n);
    for (int i = 0; i < n; ++i) b(i) = 10.0 * u(rng);
    const Vector x = lu_solve(A, b);
    CHECK((A * x - b).lpNorm<Eigen::Infinity>() <=
          1e-9 * (1.0 + b.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("solve_kkt: unconstrained newton step") {
  Vector r1(2);
  r1 << -2, 0;
  const auto [x, lambda] = solve_kkt(Matrix::Identity(2, 2), Matrix(0, 2), r1,
                                     Vector(0));
  CHECK(x(0) == doctest::Approx(-2.0));
  CHECK(x(1) == doctest::Approx(0.0));
  CHECK(lambda.size() == 0);
}

TEST_CASE("solve_kkt: one equality row") {
  Matrix A(1, 2);
  A << 1, 1;
  Vector r1(2), r2(1);
  r1 << -2, 0;
  r2 << 0;
  const auto [x, lambda] = solve_kkt(Matrix::Identity(2, 2), A, r1, r2);
  CHECK(x(0) == doctest::Approx(-1.0));
  CHECK(x(1) == doctest::Approx(1.0));
  CHECK(lambda(0) == doctest::Approx(-1.0));
}

TEST_CASE("solve_kkt: dependent rows throw") {
  Matrix A(2, 2);
  A << 1, 0, 1, 0;
  CHECK_THROWS_AS(
      solve_kkt(Matrix::Identity(2, 2), A, Vector::Zero(2), Vector::Zero(2)),
      SingularMatrix);
}

TEST_CASE("solve_kkt: block equations hold on random PSD systems") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int m = static_cast<int>(rng() % n);
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = u(rng);
    const Matrix Q = M.transpose() * M + 0.5 * Matrix::Identity(n, n);
    // [I | R] keeps the rows independent for any R.
    Matrix A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = (j == i) ? 1.0 : u(rng);
    Vector r1(n), r2(m);
    for (int i = 0; i < n; ++i) r1(i) = u(rng);
    for (int i = 0; i < m; ++i) r2(i) = u(rng);
    const auto [x, lambda] = solve_kkt(Q, A, r1, r2);
    CHECK((Q * x + A.transpose() * lambda - r1).lpNorm<Eigen::Infinity>() <=
          1e-8);
    if (m > 0) CHECK((A * x - r2).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("reduce_equalities: drops dependent consistent rows") {
  Matrix A(3, 2);
  A << 1, 0, 1, 0, 0, 1;
  Vector b(3);
  b << 1, 1, 2;
  const auto red = reduce_equalities(A, b);
  REQUIRE(red.has_value());
  CHECK(red->A.rows() == 2);
  CHECK((red->A * red->x0 - red->b).lpNorm<Eigen::Infinity>() <= 1e-8);
  CHECK((A * red->x0 - b).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("reduce_equalities: inconsistent rows give nullopt") {
  Matrix A(2, 2);
  A << 1, 0, 1, 0;
  Vector b(2);
  b << 1, 2;
  CHECK_FALSE(reduce_equalities(A, b).has_value());
}
