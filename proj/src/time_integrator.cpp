#include "vmspod/time_integrator.hpp"

#include <algorithm>
#include <cmath>

#include "vmspod/error.hpp"
#include "vmspod/sparse_solver.hpp"

namespace vmspod {

void SnapshotSet::compute_diff_quotients() {
  const Eigen::Index n = states.cols() - 1;
  diff_quotients.resize(states.rows(), std::max<Eigen::Index>(n, 0));
  for (Eigen::Index k = 1; k <= n; ++k)
    diff_quotients.col(k - 1) = (states.col(k) - states.col(k - 1)) / dt;
}

std::string space_tag(const fem::FESpace& space) {
  return "P" + std::to_string(space.degree) + ":nx=" + std::to_string(space.mesh->nx) +
         ":free=" + std::to_string(space.num_free());
}

LoadHistory LoadHistory::compute(const fem::FESpace& space, const ProblemSpec& problem) {
  const int steps = problem.num_steps();
  LoadHistory h;
  h.loads.resize(space.num_free(), steps + 1);
  h.forcing_norms.assign(static_cast<std::size_t>(steps + 1), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= steps; ++n) {
    double norm2 = 0.0;
    h.loads.col(n) =
        fem::assemble_load(space, problem, problem.time(n), fem::kAnalyticQuadratureDegree, &norm2);
    h.forcing_norms[static_cast<std::size_t>(n)] = std::sqrt(norm2);
  }
  return h;
}

void StabilityReport::check(double norm_n, double norm_0, double accumulated_forcing) {
  const double bound = norm_0 + accumulated_forcing;
  // rounding allowance only; the bound itself is not loosened
  const bool ok = norm_n <= bound * (1.0 + 1e-12) + 1e-300;
  const double slack = bound > 0.0 ? (bound - norm_n) / bound : (ok ? 0.0 : -1.0);
  min_slack = steps_checked == 0 ? slack : std::min(min_slack, slack);
  ++steps_checked;
  if (!ok) ++violations;
}

DnsRun dns_solve(const ProblemSpec& problem, const fem::FESpace& space,
                 const fem::FemOperators& ops, LoadHistory loads) {
  const int steps = problem.num_steps();
  require(loads.loads.cols() == steps + 1 && loads.loads.rows() == space.num_free(),
          ErrorKind::InvalidArgument, "dns_solve: load history does not match the problem");
  const double dt = problem.dt;

  const fem::SparseOperator system =
      (ops.mass * (1.0 / dt + problem.g) + ops.stiffness * problem.epsilon + ops.convection)
          .pruned();
  const fem::SparseSolver solver(system);

  DnsRun run;
  SnapshotSet& snaps = run.snapshots;
  snaps.dt = dt;
  snaps.space_tag = space_tag(space);
  snaps.states.resize(space.num_free(), steps + 1);
  const ExactSolution& exact = *problem.exact;
  snaps.states.col(0) = fem::interpolate(space, [&exact](double x, double y) { return exact.value(x, y, 0.0); });

  const auto l2 = [&ops](const Vector& u) { return std::sqrt(std::max(0.0, u.dot(ops.mass * u))); };
  const double norm0 = l2(snaps.states.col(0));
  double accumulated = 0.0;
  for (int n = 1; n <= steps; ++n) {
    const Vector rhs = ops.mass * snaps.states.col(n - 1) / dt + loads.loads.col(n);
    snaps.states.col(n) = solver.solve(rhs);
    accumulated += dt * loads.forcing_norms[static_cast<std::size_t>(n)];
    run.stability.check(l2(snaps.states.col(n)), norm0, accumulated);
  }
  snaps.compute_diff_quotients();
  run.loads = std::move(loads);
  return run;
}

DnsRun dns_solve(const ProblemSpec& problem, const fem::FESpace& space) {
  const auto ops = fem::FemOperators::assemble(space, problem.b);
  return dns_solve(problem, space, ops, LoadHistory::compute(space, problem));
}

ErrorEvaluator::ErrorEvaluator(const fem::FESpace& space, const ProblemSpec& problem,
                               const fem::SparseOperator& mass, int quad_degree)
    : mass_(mass) {
  const int steps = problem.num_steps();
  projections_.resize(space.num_free(), steps + 1);
  exact_norm2_.assign(static_cast<std::size_t>(steps + 1), 0.0);
  const ExactSolution& exact = *problem.exact;
#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= steps; ++n) {
    const double t = problem.time(n);
    double norm2 = 0.0;
    projections_.col(n) = fem::assemble_load(
        space, [&exact, t](double x, double y) { return exact.value(x, y, t); }, quad_degree,
        &norm2);
    exact_norm2_[static_cast<std::size_t>(n)] = norm2;
  }
}

double ErrorEvaluator::error(int n, const Vector& c) const {
  const double e2 = exact_norm2_[static_cast<std::size_t>(n)] - 2.0 * c.dot(projections_.col(n)) +
                    c.dot(mass_ * c);
  return std::sqrt(std::max(0.0, e2));
}

double ErrorEvaluator::average_error(const Matrix& states) const {
  require(states.cols() == num_times(), ErrorKind::InvalidArgument,
          "average_error: trajectory length does not match the time grid");
  double sum = 0.0;
  for (int n = 0; n < num_times(); ++n) sum += error(n, states.col(n));
  return sum / num_times();
}

ErrorEvaluator::Reduced ErrorEvaluator::reduce(const Matrix& modes) const {
  Reduced r;
  r.projections = modes.transpose() * projections_;
  r.mass = modes.transpose() * (mass_ * modes);
  r.exact_norm2 = exact_norm2_;
  return r;
}

double ErrorEvaluator::Reduced::error(int n, const Vector& a) const {
  const double e2 = exact_norm2[static_cast<std::size_t>(n)] - 2.0 * a.dot(projections.col(n)) +
                    a.dot(mass * a);
  return std::sqrt(std::max(0.0, e2));
}

double ErrorEvaluator::Reduced::average_error(const Matrix& coeffs) const {
  const int times = static_cast<int>(exact_norm2.size());
  require(coeffs.cols() == times, ErrorKind::InvalidArgument,
          "average_error: trajectory length does not match the time grid");
  double sum = 0.0;
  for (int n = 0; n < times; ++n) sum += error(n, coeffs.col(n));
  return sum / times;
}

ErrorEvaluator::Reduced ErrorEvaluator::Reduced::truncate(int r) const {
  require(r >= 0 && r <= mass.rows(), ErrorKind::InvalidArgument, "truncate: r out of range");
  return {projections.topRows(r), mass.topLeftCorner(r, r), exact_norm2};
}

double average_l2_error(const fem::FESpace& space, const SnapshotSet& snapshots,
                        const ExactSolution& exact, int quad_degree) {
  require(snapshots.states.cols() > 0, ErrorKind::InvalidArgument,
          "average_l2_error: empty snapshot set");
  double sum = 0.0;
  for (Eigen::Index n = 0; n < snapshots.states.cols(); ++n) {
    const double t = static_cast<double>(n) * snapshots.dt;
    sum += fem::l2_error(
        space, snapshots.states.col(n), [&exact, t](double x, double y) { return exact.value(x, y, t); },
        quad_degree);
  }
  return sum / static_cast<double>(snapshots.states.cols());
}

}  // namespace vmspod
