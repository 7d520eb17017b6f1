#pragma once

#include <string>
#include <vector>

#include "vmspod/assembly.hpp"
#include "vmspod/problem.hpp"

namespace vmspod {

using fem::Matrix;
using fem::Vector;

/// Free-DOF coefficient vectors u(t_0..t_N) and the backward difference
/// quotients (u(t_n) - u(t_{n-1})) / dt, n = 1..N.
struct SnapshotSet {
  Matrix states;          // num_free x (N + 1)
  Matrix diff_quotients;  // num_free x N
  double dt = 0.0;
  std::string space_tag;

  int num_steps() const { return static_cast<int>(diff_quotients.cols()); }
  int dimension() const { return static_cast<int>(states.rows()); }
  /// 2N + 1.
  int snapshot_count() const { return static_cast<int>(states.cols() + diff_quotients.cols()); }

  /// Fills `diff_quotients` from `states`.
  void compute_diff_quotients();
};

/// Identity tag "P<m>:nx=<nx>:free=<n>" shared by snapshot, basis and run files.
std::string space_tag(const fem::FESpace& space);

/// Load vectors F^n = (f(t_n), phi_i) for n = 0..N, and ||f(t_n)||_{L2}.
struct LoadHistory {
  Matrix loads;                      // num_free x (N + 1)
  std::vector<double> forcing_norms; // N + 1

  static LoadHistory compute(const fem::FESpace& space, const ProblemSpec& problem);
};

/// Counts steps at which ||u^n|| <= ||u^0|| + dt sum_{k=1..n} ||f^k|| fails.
struct StabilityReport {
  int steps_checked = 0;
  int violations = 0;
  double min_slack = 0.0;  // min over n of bound - ||u^n||, relative to the bound

  void check(double norm_n, double norm_0, double accumulated_forcing);
};

struct DnsRun {
  SnapshotSet snapshots;
  LoadHistory loads;
  StabilityReport stability;
};

/// Backward Euler on (M/dt + eps A + C + g M) u^{n+1} = M u^n / dt + F^{n+1}
/// with the system matrix factored once. Initial state is the nodal interpolant
/// of the exact solution at t = 0.
DnsRun dns_solve(const ProblemSpec& problem, const fem::FESpace& space,
                 const fem::FemOperators& ops, LoadHistory loads);
DnsRun dns_solve(const ProblemSpec& problem, const fem::FESpace& space);

/// Exact-solution data for fast L2 errors of many trajectories against the same
/// manufactured solution. ||u - u_h||^2 = ||u||^2 - 2 c.(u, phi) + c^T M c, which is
/// the same quadrature as integrating (u - u_h)^2 directly.
class ErrorEvaluator {
 public:
  ErrorEvaluator(const fem::FESpace& space, const ProblemSpec& problem,
                 const fem::SparseOperator& mass, int quad_degree = fem::kAnalyticQuadratureDegree);

  double error(int n, const Vector& free_coeffs) const;
  /// (1/(N+1)) sum_n ||u(t_n) - u_h^n||.
  double average_error(const Matrix& states) const;

  /// Same quantities for coefficients in the span of `modes` (columns).
  struct Reduced {
    Matrix projections;  // r x (N + 1), modes^T (u(t_n), phi_i)
    Matrix mass;         // r x r, modes^T M modes
    std::vector<double> exact_norm2;

    double error(int n, const Vector& a) const;
    double average_error(const Matrix& coeffs) const;
    /// Restriction to the leading r modes.
    Reduced truncate(int r) const;
  };
  Reduced reduce(const Matrix& modes) const;

  int num_times() const { return static_cast<int>(exact_norm2_.size()); }

 private:
  fem::SparseOperator mass_;
  Matrix projections_;  // num_free x (N + 1)
  std::vector<double> exact_norm2_;
};

/// Direct element quadrature of (1/(N+1)) sum_n ||u(t_n) - u_h^n||_{L2}.
double average_l2_error(const fem::FESpace& space, const SnapshotSet& snapshots,
                        const ExactSolution& exact,
                        int quad_degree = fem::kAnalyticQuadratureDegree);

}  // namespace vmspod
