#include "vmspod/rom.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "vmspod/error.hpp"

namespace vmspod::rom {

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::PodG ? "pod-g" : "vms-pod";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "pod-g") return ModelKind::PodG;
  if (text == "vms-pod") return ModelKind::VmsPod;
  throw Error(ErrorKind::InvalidConfiguration,
              "unknown model '" + std::string(text) + "' (expected pod-g or vms-pod)");
}

VmsTerm build_vms_term(const pod::ReducedMatrices& reduced, int R) {
  const Matrix& h = reduced.stiffness;
  const int r = static_cast<int>(h.rows());
  require(R >= 0 && R <= r, ErrorKind::InvalidArgument,
          "build_vms_term: R = " + std::to_string(R) + " outside [0, " + std::to_string(r) + "]");

  VmsTerm term;
  term.R = R;
  if (R == 0) {
    term.matrix = h;
    return term;
  }

  // Unpivoted LDL^T in mode order: pivot k is the part of grad phi_k not explained
  // by grad phi_1..grad phi_{k-1}.
  const Matrix g = h.topLeftCorner(R, R);
  Matrix l = Matrix::Identity(R, R);
  Vector piv(R);
  std::vector<int> dependent;
  for (int k = 0; k < R; ++k) {
    double dk = g(k, k);
    for (int j = 0; j < k; ++j) dk -= l(k, j) * l(k, j) * piv[j];
    piv[k] = dk;
    if (!(dk > kGradientPivotTolerance * g(k, k))) {
      dependent.push_back(k + 1);
      piv[k] = 1.0;  // keep going so every dependent mode is reported
    }
    for (int i = k + 1; i < R; ++i) {
      double v = g(i, k);
      for (int j = 0; j < k; ++j) v -= l(i, j) * l(k, j) * piv[j];
      l(i, k) = v / piv[k];
    }
  }
  if (!dependent.empty()) {
    std::ostringstream msg;
    msg << "gradients of POD modes";
    for (int m : dependent) msg << ' ' << m;
    msg << " are linearly dependent on lower modes; G_R is singular for R = " << R;
    throw Error(ErrorKind::RankDeficiency, msg.str());
  }

  const Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  term.gradient_gram_condition = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();

  const Matrix c = h.leftCols(R);
  const Eigen::LLT<Matrix> llt(g);
  require(llt.info() == Eigen::Success, ErrorKind::RankDeficiency,
          "build_vms_term: G_R is not positive definite");
  term.matrix = h - c * llt.solve(c.transpose());
  term.matrix = 0.5 * (term.matrix + term.matrix.transpose()).eval();
  return term;
}

RomContext RomContext::build(const pod::PodBasis& basis, const fem::FemOperators& ops,
                             const LoadHistory& loads, const Vector& u0,
                             const ProblemSpec& problem) {
  const Matrix& phi = basis.modes;
  RomContext c;
  c.mass = phi.transpose() * (ops.mass * phi);
  c.mass = 0.5 * (c.mass + c.mass.transpose()).eval();
  c.stiffness = phi.transpose() * (ops.stiffness * phi);
  c.stiffness = 0.5 * (c.stiffness + c.stiffness.transpose()).eval();
  c.transport = phi.transpose() * (ops.convection * phi) + problem.g * c.mass;
  c.projected_loads = phi.transpose() * loads.loads;
  c.projected_initial = phi.transpose() * (ops.mass * u0);
  c.forcing_norms = loads.forcing_norms;
  c.epsilon = problem.epsilon;
  c.dt = problem.dt;
  return c;
}

Matrix RomOperators::system_matrix(double dt) const {
  Matrix a = reduced.mass / dt + epsilon * reduced.stiffness + reduced.transport;
  if (vms && alpha != 0.0) a += alpha * vms->matrix;
  return a;
}

RomOperators build_rom_operators(const RomContext& context, ModelKind kind, int r, int R,
                                 double alpha) {
  require(r >= 1 && r <= context.rank(), ErrorKind::InvalidArgument,
          "r = " + std::to_string(r) + " exceeds the POD rank d = " + std::to_string(context.rank()));
  RomOperators ops;
  ops.reduced =
      pod::reduced_matrices_from_blocks(context.mass, context.stiffness, context.transport, r);
  if (kind == ModelKind::VmsPod) {
    require(alpha >= 0.0, ErrorKind::InvalidArgument, "artificial viscosity must be >= 0");
    ops.vms = build_vms_term(ops.reduced, R);
    ops.alpha = alpha;
  }
  ops.epsilon = context.epsilon;
  ops.projected_loads = context.projected_loads.topRows(r);
  ops.a0 = ops.reduced.mass.llt().solve(context.projected_initial.head(r));
  ops.forcing_norms = context.forcing_norms;
  return ops;
}

RomTrajectory rom_solve(const RomOperators& ops, double dt, int num_steps) {
  const auto r = ops.reduced.mass.rows();
  require(ops.projected_loads.cols() == num_steps + 1, ErrorKind::InvalidArgument,
          "rom_solve: projected loads do not cover the time grid");
  const Eigen::PartialPivLU<Matrix> lu(ops.system_matrix(dt));
  require(lu.rcond() > 1e-14, ErrorKind::FactorizationFailure,
          "rom_solve: reduced system matrix is singular");

  RomTrajectory traj;
  traj.model_kind = ops.kind();
  traj.coeffs.resize(r, num_steps + 1);
  traj.coeffs.col(0) = ops.a0;
  const Matrix& m = ops.reduced.mass;
  const auto norm = [&m](const Vector& a) { return std::sqrt(std::max(0.0, a.dot(m * a))); };
  const double norm0 = norm(ops.a0);
  double accumulated = 0.0;
  for (int n = 1; n <= num_steps; ++n) {
    traj.coeffs.col(n) = lu.solve(m * traj.coeffs.col(n - 1) / dt + ops.projected_loads.col(n));
    if (!ops.forcing_norms.empty())
      accumulated += dt * ops.forcing_norms[static_cast<std::size_t>(n)];
    traj.stability.check(norm(traj.coeffs.col(n)), norm0, accumulated);
  }
  return traj;
}

Vector reconstruct(const pod::PodBasis& basis, const RomTrajectory& trajectory, int n) {
  require(n >= 0 && n < trajectory.coeffs.cols(), ErrorKind::InvalidArgument,
          "reconstruct: time index out of range");
  const auto r = trajectory.coeffs.rows();
  return basis.modes.leftCols(r) * trajectory.coeffs.col(n);
}

}  // namespace vmspod::rom
