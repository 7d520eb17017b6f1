#pragma once

#include <Eigen/SparseLU>

#include "vmspod/assembly.hpp"

namespace vmspod::fem {

/// LU factorization of a square sparse operator, computed once and reused for
/// any number of right-hand sides. Every solve is checked against the relative
/// residual bound ||A x - b|| <= tol * (||A|| ||x|| + ||b||).
class SparseSolver {
 public:
  static constexpr double kResidualTolerance = 1e-10;

  explicit SparseSolver(const SparseOperator& a);

  Vector solve(const Vector& rhs) const;
  int size() const { return static_cast<int>(a_.rows()); }

 private:
  SparseOperator a_;
  double norm_fro_ = 0.0;
  Eigen::SparseLU<SparseOperator, Eigen::COLAMDOrdering<int>> lu_;
};

Vector solve_sparse(const SparseOperator& a, const Vector& rhs);

/// Max absolute row sum.
double norm_inf(const SparseOperator& a);

}  // namespace vmspod::fem
