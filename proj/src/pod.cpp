#include "vmspod/pod.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "vmspod/error.hpp"

namespace vmspod::pod {

std::string_view to_string(InnerProduct kind) {
  switch (kind) {
    case InnerProduct::L2: return "L2";
    case InnerProduct::H1Full: return "H1";
    case InnerProduct::H1Semi: return "H1semi";
  }
  return "?";
}

InnerProduct parse_inner_product(std::string_view text) {
  if (text == "L2" || text == "l2") return InnerProduct::L2;
  if (text == "H1" || text == "h1") return InnerProduct::H1Full;
  if (text == "H1semi" || text == "h1semi") return InnerProduct::H1Semi;
  throw Error(ErrorKind::InvalidConfiguration,
              "unknown inner product '" + std::string(text) + "' (expected L2, H1 or H1semi)");
}

fem::SparseOperator gram_operator(InnerProduct kind, const fem::FemOperators& ops) {
  switch (kind) {
    case InnerProduct::L2: return ops.mass;
    case InnerProduct::H1Full: return ops.mass + ops.stiffness;
    case InnerProduct::H1Semi: return ops.stiffness;
  }
  return ops.mass;
}

Matrix extended_snapshots(const SnapshotSet& snapshots) {
  Matrix w(snapshots.dimension(), snapshots.snapshot_count());
  w << snapshots.states, snapshots.diff_quotients;
  return w;
}

Correlation build_correlation(const SnapshotSet& snapshots, InnerProduct kind,
                              const fem::FemOperators& ops) {
  require(snapshots.states.cols() > 0, ErrorKind::InvalidArgument,
          "build_correlation: empty snapshot set");
  Correlation c;
  c.kind = kind;
  c.gram = gram_operator(kind, ops);
  const Matrix w = extended_snapshots(snapshots);
  const Matrix xw = c.gram * w;
  c.matrix.noalias() = w.transpose() * xw;
  c.matrix = 0.5 * (c.matrix + c.matrix.transpose()).eval();
  c.matrix /= static_cast<double>(w.cols());
  return c;
}

PodBasis compute_basis(const SnapshotSet& snapshots, const Correlation& correlation,
                       double tol_rank) {
  const Matrix& k = correlation.matrix;
  const auto ns = k.rows();
  require(ns == snapshots.snapshot_count() && k.cols() == ns, ErrorKind::InvalidArgument,
          "compute_basis: correlation matrix does not match the snapshot set");

  const Eigen::SelfAdjointEigenSolver<Matrix> eig(k);
  require(eig.info() == Eigen::Success, ErrorKind::FactorizationFailure,
          "compute_basis: symmetric eigensolver did not converge");
  const Vector& values = eig.eigenvalues();  // ascending
  const double lambda_max = values[ns - 1];

  PodBasis basis;
  basis.kind = correlation.kind;
  basis.source_snapshot_count = static_cast<int>(ns);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = ns - 1; i >= 0; --i) {
    if (lambda_max > 0.0 && values[i] > tol_rank * lambda_max) {
      basis.eigenvalues.push_back(values[i]);
      kept.push_back(i);
    } else {
      basis.discarded_energy += std::max(0.0, values[i]);
    }
  }
  require(!kept.empty(), ErrorKind::EmptyBasis,
          "compute_basis: every eigenvalue of the correlation matrix is below the rank cutoff");

  const auto d = static_cast<Eigen::Index>(kept.size());
  Matrix coeffs(ns, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double lambda = basis.eigenvalues[static_cast<std::size_t>(j)];
    coeffs.col(j) = eig.eigenvectors().col(kept[static_cast<std::size_t>(j)]) /
                    std::sqrt(lambda * static_cast<double>(ns));
  }
  basis.modes.noalias() = extended_snapshots(snapshots) * coeffs;

  // Modes with lambda_k << lambda_1 inherit rounding of relative size eps * lambda_1 / lambda_k
  // from the snapshot combination; a triangular correction keeps mode k in span(phi_1..phi_k).
  for (int pass = 0; pass < 2; ++pass) {
    const Matrix g = basis.modes.transpose() * (correlation.gram * basis.modes);
    if ((g - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-14) break;
    const Eigen::LLT<Matrix> llt(g);
    require(llt.info() == Eigen::Success, ErrorKind::FactorizationFailure,
            "compute_basis: mode Gram matrix is not positive definite");
    basis.modes = llt.matrixU().solve<Eigen::OnTheRight>(basis.modes);
  }

  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::Index imax = 0;
    basis.modes.col(j).cwiseAbs().maxCoeff(&imax);
    if (basis.modes(imax, j) < 0.0) basis.modes.col(j) *= -1.0;
  }
  return basis;
}

double tail_sum(const PodBasis& basis, int k) {
  require(k >= 0 && k <= basis.rank(), ErrorKind::InvalidArgument,
          "tail_sum: k = " + std::to_string(k) + " outside [0, " + std::to_string(basis.rank()) + "]");
  double sum = 0.0;
  // smallest first for accuracy
  for (int j = basis.rank() - 1; j >= k; --j) sum += basis.eigenvalues[static_cast<std::size_t>(j)];
  return sum;
}

double orthonormality_error(const PodBasis& basis, const fem::SparseOperator& gram) {
  const Matrix g = basis.modes.transpose() * (gram * basis.modes);
  return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double truncation_residual(const SnapshotSet& snapshots, const PodBasis& basis, int r,
                           const fem::SparseOperator& gram) {
  require(r >= 0 && r <= basis.rank(), ErrorKind::InvalidArgument,
          "truncation_residual: r out of range");
  const Matrix w = extended_snapshots(snapshots);
  const auto phi = basis.modes.leftCols(r);
  const Matrix residual = w - phi * (phi.transpose() * (gram * w));
  const Matrix xr = gram * residual;
  return residual.cwiseProduct(xr).sum() / static_cast<double>(w.cols());
}

namespace {

void spectral_norms(ReducedMatrices& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> mass_eig(m.mass, Eigen::EigenvaluesOnly);
  const Eigen::SelfAdjointEigenSolver<Matrix> stiff_eig(m.stiffness, Eigen::EigenvaluesOnly);
  const Eigen::SelfAdjointEigenSolver<Matrix> h1_eig(m.h1_gram, Eigen::EigenvaluesOnly);
  require(mass_eig.eigenvalues()[0] > 0.0, ErrorKind::FactorizationFailure,
          "reduced mass matrix is not positive definite");
  m.mass_norm = mass_eig.eigenvalues().maxCoeff();
  m.inv_mass_norm = 1.0 / mass_eig.eigenvalues()[0];
  m.stiffness_norm = stiff_eig.eigenvalues().cwiseAbs().maxCoeff();
  m.h1_gram_norm = h1_eig.eigenvalues().maxCoeff();
  m.inv_h1_gram_norm = 1.0 / h1_eig.eigenvalues()[0];
}

}  // namespace

ReducedMatrices reduced_matrices_from_blocks(const Matrix& mass, const Matrix& stiffness,
                                             const Matrix& transport, int r) {
  require(r >= 1 && r <= mass.rows(), ErrorKind::InvalidArgument,
          "reduced_matrices: r = " + std::to_string(r) + " outside [1, " +
              std::to_string(mass.rows()) + "]");
  ReducedMatrices m;
  m.r = r;
  m.mass = mass.topLeftCorner(r, r);
  m.stiffness = stiffness.topLeftCorner(r, r);
  m.h1_gram = m.mass + m.stiffness;
  m.transport = transport.topLeftCorner(r, r);
  spectral_norms(m);
  return m;
}

ReducedMatrices reduced_matrices(const PodBasis& basis, int r, const fem::FemOperators& ops,
                                 double g) {
  require(r >= 1 && r <= basis.rank(), ErrorKind::InvalidArgument,
          "reduced_matrices: r = " + std::to_string(r) + " outside [1, " +
              std::to_string(basis.rank()) + "]");
  const auto phi = basis.modes.leftCols(r);
  ReducedMatrices m;
  m.r = r;
  m.mass = phi.transpose() * (ops.mass * phi);
  m.stiffness = phi.transpose() * (ops.stiffness * phi);
  m.mass = 0.5 * (m.mass + m.mass.transpose()).eval();
  m.stiffness = 0.5 * (m.stiffness + m.stiffness.transpose()).eval();
  m.h1_gram = m.mass + m.stiffness;
  m.transport = phi.transpose() * (ops.convection * phi) + g * m.mass;
  spectral_norms(m);
  return m;
}

}  // namespace vmspod::pod
