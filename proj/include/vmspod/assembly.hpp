#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "vmspod/fe_space.hpp"
#include "vmspod/problem.hpp"

namespace vmspod::fem {

using SparseOperator = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SpatialFunction = std::function<double(double, double)>;

/// Which DOFs an operator is assembled on. `Free` drops every Dirichlet row and column.
enum class DofSet { Free, All };

/// Degree of the rule used for integrals against analytic functions (loads, errors).
/// The operators themselves use the lowest rule that is exact for their integrand.
inline constexpr int kAnalyticQuadratureDegree = 10;

/// Rule exact for products of two shape functions of the given degree.
TriangleRule operator_rule(int degree);

SparseOperator assemble_mass(const FESpace& space, DofSet dofs = DofSet::Free);
SparseOperator assemble_stiffness(const FESpace& space, DofSet dofs = DofSet::Free);
/// Entry (i, j) = (b . grad phi_j, phi_i).
SparseOperator assemble_convection(const FESpace& space, const std::array<double, 2>& b,
                                   DofSet dofs = DofSet::Free);

/// (f, phi_i) over the free basis functions. When `norm_squared` is given it
/// receives ||f||^2_{L2} from the same quadrature points.
Vector assemble_load(const FESpace& space, const SpatialFunction& f,
                     int quad_degree = kAnalyticQuadratureDegree, double* norm_squared = nullptr);
Vector assemble_load(const FESpace& space, const ProblemSpec& problem, double t,
                     int quad_degree = kAnalyticQuadratureDegree, double* norm_squared = nullptr);

/// Nodal interpolant on the free DOFs.
Vector interpolate(const FESpace& space, const SpatialFunction& f);
/// Nodal interpolant on every DOF.
Vector interpolate_all(const FESpace& space, const SpatialFunction& f);

/// Free-DOF vector padded with zero Dirichlet values.
Vector extend_by_zero(const FESpace& space, const Vector& free_coeffs);

/// ||f - u_h||_{L2} by element quadrature; `all_coeffs` lives on every DOF.
double l2_error_all(const FESpace& space, const Vector& all_coeffs, const SpatialFunction& f,
                    int quad_degree = kAnalyticQuadratureDegree);
double l2_error(const FESpace& space, const Vector& free_coeffs, const SpatialFunction& f,
                int quad_degree = kAnalyticQuadratureDegree);
double l2_norm(const FESpace& space, const SpatialFunction& f,
               int quad_degree = kAnalyticQuadratureDegree);

/// Everything the time integrator and reduced models need from the FE side.
struct FemOperators {
  SparseOperator mass;
  SparseOperator stiffness;
  SparseOperator convection;

  static FemOperators assemble(const FESpace& space, const std::array<double, 2>& b);
};

}  // namespace vmspod::fem
