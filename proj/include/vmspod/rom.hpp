#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "vmspod/pod.hpp"
#include "vmspod/time_integrator.hpp"

namespace vmspod::rom {

enum class ModelKind { PodG, VmsPod };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

/// Small-scale artificial viscosity matrix (P'_R grad phi_j, P'_R grad phi_i), with
/// P_R the L2 projection onto span{grad phi_1..grad phi_R}. Evaluated through the
/// Schur complement S = H - C G_R^{-1} C^T of the reduced stiffness matrix.
struct VmsTerm {
  int R = 0;
  Matrix matrix;
  double gradient_gram_condition = 1.0;  // cond_2(G_R)
};

/// Relative pivot below which a gradient mode counts as linearly dependent on its predecessors.
inline constexpr double kGradientPivotTolerance = 1e-12;

VmsTerm build_vms_term(const pod::ReducedMatrices& reduced, int R);

/// Projections of every d-level quantity the reduced models need; leading
/// blocks give the r-level operators without touching the FE space again.
struct RomContext {
  Matrix mass;        // d x d
  Matrix stiffness;   // d x d
  Matrix transport;   // d x d, includes g M
  Matrix projected_loads;   // d x (N + 1), Phi^T F^n
  Vector projected_initial; // Phi^T M u^0
  std::vector<double> forcing_norms;
  double epsilon = 0.0;
  double dt = 0.0;

  static RomContext build(const pod::PodBasis& basis, const fem::FemOperators& ops,
                          const LoadHistory& loads, const Vector& u0, const ProblemSpec& problem);
  int rank() const { return static_cast<int>(mass.rows()); }
  int num_steps() const { return static_cast<int>(projected_loads.cols()) - 1; }
};

struct RomOperators {
  pod::ReducedMatrices reduced;
  std::optional<VmsTerm> vms;
  double alpha = 0.0;
  double epsilon = 0.0;
  Matrix projected_loads;  // r x (N + 1)
  Vector a0;               // M_r^{-1} Phi_r^T M u^0
  std::vector<double> forcing_norms;

  ModelKind kind() const { return vms ? ModelKind::VmsPod : ModelKind::PodG; }
  /// M_r/dt + eps H_r + B_r + alpha S_vms.
  Matrix system_matrix(double dt) const;
};

/// POD-G when `kind` is PodG (R and alpha ignored), VMS-POD otherwise.
RomOperators build_rom_operators(const RomContext& context, ModelKind kind, int r, int R,
                                 double alpha);

struct RomTrajectory {
  Matrix coeffs;  // r x (N + 1)
  ModelKind model_kind = ModelKind::PodG;
  StabilityReport stability;
};

/// Backward Euler with the r x r system factored once.
RomTrajectory rom_solve(const RomOperators& ops, double dt, int num_steps);

/// Phi_r a^n.
Vector reconstruct(const pod::PodBasis& basis, const RomTrajectory& trajectory, int n);

}  // namespace vmspod::rom
