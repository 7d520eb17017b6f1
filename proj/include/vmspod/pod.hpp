#pragma once

#include <string_view>
#include <vector>

#include "vmspod/assembly.hpp"
#include "vmspod/time_integrator.hpp"

namespace vmspod::pod {

/// Inner product the POD modes are orthonormal in.
/// H1Full is (u, v) + (grad u, grad v); H1Semi is the gradient part alone.
enum class InnerProduct { L2, H1Full, H1Semi };

std::string_view to_string(InnerProduct kind);
InnerProduct parse_inner_product(std::string_view text);

/// Sparse Gram operator of the inner product on the free DOFs.
fem::SparseOperator gram_operator(InnerProduct kind, const fem::FemOperators& ops);

/// Snapshot correlation matrix over the extended set {u(t_0..t_N), dq(t_1..t_N)}:
/// K_ij = (w_j, w_i)_X / N_s with N_s = 2N + 1.
struct Correlation {
  Matrix matrix;
  InnerProduct kind = InnerProduct::H1Full;
  fem::SparseOperator gram;
};

/// Columns [states | diff_quotients].
Matrix extended_snapshots(const SnapshotSet& snapshots);

Correlation build_correlation(const SnapshotSet& snapshots, InnerProduct kind,
                              const fem::FemOperators& ops);

inline constexpr double kDefaultRankTolerance = 1e-12;

struct PodBasis {
  Matrix modes;                     // num_free x d, X-orthonormal
  std::vector<double> eigenvalues;  // descending, all > tol * lambda_1
  InnerProduct kind = InnerProduct::H1Full;
  int source_snapshot_count = 0;
  double discarded_energy = 0.0;    // sum of eigenvalues below the rank cutoff

  int rank() const { return static_cast<int>(eigenvalues.size()); }
};

/// Method of snapshots. Modes phi_k = (lambda_k N_s)^{-1/2} sum_j (v_k)_j w_j, then
/// re-orthonormalized in X (Cholesky of the mode Gram matrix) if rounding has
/// pushed them away from orthonormality. The largest-magnitude entry of every
/// mode is made positive.
PodBasis compute_basis(const SnapshotSet& snapshots, const Correlation& correlation,
                       double tol_rank = kDefaultRankTolerance);

/// sum_{j > k} lambda_j over the retained eigenvalues, 0 <= k <= d.
double tail_sum(const PodBasis& basis, int k);

/// max_ij |(phi_i, phi_j)_X - delta_ij|.
double orthonormality_error(const PodBasis& basis, const fem::SparseOperator& gram);

/// (1/N_s) sum_i ||w_i - sum_{j<=r} (w_i, phi_j)_X phi_j||_X^2 over the extended set.
double truncation_residual(const SnapshotSet& snapshots, const PodBasis& basis, int r,
                           const fem::SparseOperator& gram);

/// Congruence projections of the FE operators onto the first r modes.
struct ReducedMatrices {
  int r = 0;
  Matrix mass;        // (phi_j, phi_i)
  Matrix stiffness;   // (grad phi_j, grad phi_i)
  Matrix h1_gram;     // (phi_j, phi_i)_{H1}
  Matrix transport;   // (b . grad phi_j, phi_i) + g (phi_j, phi_i)
  double inv_mass_norm = 0.0;   // ||M_r^{-1}||_2
  double stiffness_norm = 0.0;  // ||H_r||_2
  double h1_gram_norm = 0.0;    // ||S_r||_2
  double inv_h1_gram_norm = 0.0;
  double mass_norm = 0.0;
};

ReducedMatrices reduced_matrices(const PodBasis& basis, int r, const fem::FemOperators& ops,
                                 double g);

/// Same, from the full d x d projections (leading blocks are the r-level matrices).
ReducedMatrices reduced_matrices_from_blocks(const Matrix& mass, const Matrix& stiffness,
                                             const Matrix& transport, int r);

}  // namespace vmspod::pod
