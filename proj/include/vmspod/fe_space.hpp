#pragma once

#include <array>
#include <memory>
#include <vector>

#include "vmspod/mesh.hpp"
#include "vmspod/quadrature.hpp"

namespace vmspod::fem {

/// Lagrange P1 or P2 space on a TriMesh with homogeneous Dirichlet data on
/// the whole boundary. Global numbering: mesh nodes first, then (P2 only) one
/// DOF per edge in order of first appearance while walking the triangles.
struct FESpace {
  std::shared_ptr<const TriMesh> mesh;
  int degree = 1;
  int dofs_per_element = 3;
  std::vector<Point2> dof_coords;
  std::vector<int> dof_map;    // num_triangles * dofs_per_element
  std::vector<int> free_dofs;  // ascending global indices
  std::vector<int> free_index; // global -> position in free_dofs, -1 on the boundary

  int num_dofs() const { return static_cast<int>(dof_coords.size()); }
  int num_free() const { return static_cast<int>(free_dofs.size()); }
  const int* element_dofs(int triangle) const {
    return dof_map.data() + static_cast<std::ptrdiff_t>(triangle) * dofs_per_element;
  }
};

FESpace build_fespace(std::shared_ptr<const TriMesh> mesh, int degree);
FESpace build_fespace(const TriMesh& mesh, int degree);

/// Affine map from the reference triangle onto one mesh triangle.
struct ElementGeometry {
  Point2 origin;
  std::array<double, 4> jacobian{};      // row-major [dx/dxi dx/deta; dy/dxi dy/deta]
  std::array<double, 4> inv_jacobian{};  // row-major
  double det = 0.0;                      // 2 * area

  Point2 map(const Point2& ref) const {
    return {origin.x + jacobian[0] * ref.x + jacobian[1] * ref.y,
            origin.y + jacobian[2] * ref.x + jacobian[3] * ref.y};
  }
  /// Physical gradient from a reference gradient: J^{-T} g.
  std::array<double, 2> push_gradient(double gxi, double geta) const {
    return {inv_jacobian[0] * gxi + inv_jacobian[2] * geta,
            inv_jacobian[1] * gxi + inv_jacobian[3] * geta};
  }
};

ElementGeometry element_geometry(const TriMesh& mesh, int triangle);
ElementGeometry element_geometry(const Point2& a, const Point2& b, const Point2& c);

/// Reference shape values and gradients of a P1/P2 element at one point.
void reference_shape(int degree, const Point2& ref, double* values, double* grad_xi,
                     double* grad_eta);

/// Shape data of one element type tabulated at the points of a rule.
struct ShapeTable {
  int degree = 1;
  int nloc = 3;
  TriangleRule rule;
  std::vector<double> values;  // q * nloc + k
  std::vector<double> grad_xi;
  std::vector<double> grad_eta;

  ShapeTable(int degree, TriangleRule rule);
  double value(int q, int k) const { return values[static_cast<std::size_t>(q * nloc + k)]; }
};

}  // namespace vmspod::fem
