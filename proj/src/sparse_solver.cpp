#include "vmspod/sparse_solver.hpp"

#include <cmath>
#include <sstream>

#include "vmspod/error.hpp"

namespace vmspod::fem {

double norm_inf(const SparseOperator& a) {
  Vector rows = Vector::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(a, k); it; ++it) rows[it.row()] += std::abs(it.value());
  return rows.size() == 0 ? 0.0 : rows.maxCoeff();
}

SparseSolver::SparseSolver(const SparseOperator& a) : a_(a) {
  require(a.rows() == a.cols(), ErrorKind::InvalidArgument, "SparseSolver: matrix is not square");
  a_.makeCompressed();
  norm_fro_ = a_.norm();
  lu_.analyzePattern(a_);
  lu_.factorize(a_);
  if (lu_.info() != Eigen::Success) {
    throw Error(ErrorKind::FactorizationFailure, "sparse LU failed: " + lu_.lastErrorMessage());
  }
}

Vector SparseSolver::solve(const Vector& rhs) const {
  require(rhs.size() == a_.rows(), ErrorKind::InvalidArgument,
          "SparseSolver::solve: right-hand side has the wrong length");
  Vector x = lu_.solve(rhs);
  const double residual = (a_ * x - rhs).norm();
  // Frobenius norm bounds the spectral norm from above
  const double scale = norm_fro_ * x.norm() + rhs.norm();
  if (!x.allFinite() || residual > kResidualTolerance * scale) {
    std::ostringstream msg;
    msg << "sparse solve residual " << residual << " exceeds tolerance (scale " << scale
        << "); matrix is singular or ill-conditioned";
    throw Error(ErrorKind::FactorizationFailure, msg.str());
  }
  return x;
}

Vector solve_sparse(const SparseOperator& a, const Vector& rhs) { return SparseSolver(a).solve(rhs); }

}  // namespace vmspod::fem
