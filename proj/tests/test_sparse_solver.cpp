#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "vmspod/assembly.hpp"
#include "vmspod/error.hpp"
#include "vmspod/mesh.hpp"
#include "vmspod/sparse_solver.hpp"

using namespace vmspod;
using namespace vmspod::fem;

TEST(SparseSolver, ZeroRhsGivesZero) {
  const FESpace s = build_fespace(build_uniform_mesh(6), 2);
  const SparseOperator a = 3.0 * assemble_mass(s);
  const Vector x = solve_sparse(a, Vector::Zero(a.rows()));
  EXPECT_EQ(x.cwiseAbs().maxCoeff(), 0.0);
}

TEST(SparseSolver, RandomSpdMatchesDenseOracle) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 10; ++trial) {
    Matrix b(5, 5);
    for (int i = 0; i < 25; ++i) b(i / 5, i % 5) = n01(rng);
    const Matrix a = b * b.transpose() + 0.5 * Matrix::Identity(5, 5);
    Vector rhs(5);
    for (int i = 0; i < 5; ++i) rhs[i] = n01(rng);

    std::vector<std::vector<double>> ad(5, std::vector<double>(5));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) ad[i][j] = a(i, j);
    const auto ref = oracle::dense_solve(ad, std::vector<double>(rhs.data(), rhs.data() + 5));
    const Vector x = solve_sparse(a.sparseView(), rhs);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(x[i], ref[i], 1e-12 * (1 + std::abs(ref[i])));
  }
}

TEST(SparseSolver, FactorOnceSolveMany) {
  const FESpace s = build_fespace(build_uniform_mesh(8), 2);
  const FemOperators ops = FemOperators::assemble(s, {0.5, 0.8});
  const SparseOperator a = ops.mass * 100.0 + 1e-4 * ops.stiffness + ops.convection;
  const SparseSolver solver(a);
  for (int k = 0; k < 3; ++k) {
    const Vector rhs = Vector::LinSpaced(a.rows(), k, 2.0 * k + 1.0);
    const Vector x = solver.solve(rhs);
    EXPECT_EQ(x, solve_sparse(a, rhs));
    EXPECT_EQ(x, solver.solve(rhs));
    EXPECT_LE((a * x - rhs).norm(), 1e-10 * (Matrix(a).norm() * x.norm() + rhs.norm()));
  }
}

TEST(SparseSolver, SingularMatrixIsRejected) {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;  // third row empty
  try {
    solve_sparse(a.sparseView(), Vector::Ones(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FactorizationFailure);
  }
  Matrix dup(2, 2);
  dup << 1.0, 2.0, 2.0, 4.0;
  EXPECT_THROW(solve_sparse(dup.sparseView(), Vector::Ones(2)), Error);
}

TEST(SparseSolver, NonSquareIsRejected) {
  const Matrix a = Matrix::Ones(2, 3);
  EXPECT_THROW(SparseSolver{a.sparseView()}, Error);
}
