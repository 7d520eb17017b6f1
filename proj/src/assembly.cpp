#include "vmspod/assembly.hpp"

#include <cmath>
#include <vector>

#include "vmspod/error.hpp"

namespace vmspod::fem {

namespace {

using Triplet = Eigen::Triplet<double>;

enum class Form { Mass, Stiffness, Convection };

SparseOperator assemble_form(const FESpace& space, Form form, const std::array<double, 2>& b,
                             DofSet dofs) {
  const TriMesh& mesh = *space.mesh;
  const ShapeTable table(space.degree, operator_rule(space.degree));
  const int nloc = table.nloc;

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_triangles() * nloc * nloc));
  std::vector<double> local(static_cast<std::size_t>(nloc * nloc));
  std::vector<double> gx(static_cast<std::size_t>(nloc));
  std::vector<double> gy(static_cast<std::size_t>(nloc));

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    std::fill(local.begin(), local.end(), 0.0);
    for (int q = 0; q < table.rule.size(); ++q) {
      const double w = table.rule.weights[static_cast<std::size_t>(q)] * std::abs(geo.det);
      const auto off = static_cast<std::size_t>(q * nloc);
      for (int k = 0; k < nloc; ++k) {
        const auto g = geo.push_gradient(table.grad_xi[off + static_cast<std::size_t>(k)],
                                         table.grad_eta[off + static_cast<std::size_t>(k)]);
        gx[static_cast<std::size_t>(k)] = g[0];
        gy[static_cast<std::size_t>(k)] = g[1];
      }
      for (int i = 0; i < nloc; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (int j = 0; j < nloc; ++j) {
          const auto uj = static_cast<std::size_t>(j);
          double v = 0.0;
          switch (form) {
            case Form::Mass: v = table.values[off + ui] * table.values[off + uj]; break;
            case Form::Stiffness: v = gx[ui] * gx[uj] + gy[ui] * gy[uj]; break;
            case Form::Convection:
              v = (b[0] * gx[uj] + b[1] * gy[uj]) * table.values[off + ui];
              break;
          }
          local[ui * static_cast<std::size_t>(nloc) + uj] += w * v;
        }
      }
    }

    const int* dof = space.element_dofs(t);
    for (int i = 0; i < nloc; ++i) {
      int row = dof[i];
      if (dofs == DofSet::Free && (row = space.free_index[static_cast<std::size_t>(row)]) < 0)
        continue;
      for (int j = 0; j < nloc; ++j) {
        int col = dof[j];
        if (dofs == DofSet::Free && (col = space.free_index[static_cast<std::size_t>(col)]) < 0)
          continue;
        triplets.emplace_back(row, col, local[static_cast<std::size_t>(i * nloc + j)]);
      }
    }
  }

  const int n = dofs == DofSet::Free ? space.num_free() : space.num_dofs();
  SparseOperator op(n, n);
  op.setFromTriplets(triplets.begin(), triplets.end());
  op.makeCompressed();
  return op;
}

}  // namespace

TriangleRule operator_rule(int degree) { return degree == 1 ? degree2_rule() : degree4_rule(); }

SparseOperator assemble_mass(const FESpace& space, DofSet dofs) {
  return assemble_form(space, Form::Mass, {0.0, 0.0}, dofs);
}

SparseOperator assemble_stiffness(const FESpace& space, DofSet dofs) {
  return assemble_form(space, Form::Stiffness, {0.0, 0.0}, dofs);
}

SparseOperator assemble_convection(const FESpace& space, const std::array<double, 2>& b,
                                   DofSet dofs) {
  return assemble_form(space, Form::Convection, b, dofs);
}

Vector assemble_load(const FESpace& space, const SpatialFunction& f, int quad_degree,
                     double* norm_squared) {
  const TriMesh& mesh = *space.mesh;
  const ShapeTable table(space.degree, rule_for_degree(quad_degree));
  Vector load = Vector::Zero(space.num_free());
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    const int* dof = space.element_dofs(t);
    for (int q = 0; q < table.rule.size(); ++q) {
      const Point2 p = geo.map(table.rule.points[static_cast<std::size_t>(q)]);
      const double fq = f(p.x, p.y);
      const double wf = table.rule.weights[static_cast<std::size_t>(q)] * std::abs(geo.det) * fq;
      sum += wf * fq;
      for (int k = 0; k < table.nloc; ++k) {
        const int row = space.free_index[static_cast<std::size_t>(dof[k])];
        if (row >= 0) load[row] += wf * table.value(q, k);
      }
    }
  }
  if (norm_squared != nullptr) *norm_squared = sum;
  return load;
}

Vector assemble_load(const FESpace& space, const ProblemSpec& problem, double t, int quad_degree,
                     double* norm_squared) {
  return assemble_load(
      space, [&problem, t](double x, double y) { return problem.forcing(x, y, t); }, quad_degree,
      norm_squared);
}

Vector interpolate_all(const FESpace& space, const SpatialFunction& f) {
  Vector v(space.num_dofs());
  for (int i = 0; i < space.num_dofs(); ++i) {
    const Point2& p = space.dof_coords[static_cast<std::size_t>(i)];
    v[i] = f(p.x, p.y);
  }
  return v;
}

Vector interpolate(const FESpace& space, const SpatialFunction& f) {
  Vector v(space.num_free());
  for (int i = 0; i < space.num_free(); ++i) {
    const Point2& p = space.dof_coords[static_cast<std::size_t>(space.free_dofs[static_cast<std::size_t>(i)])];
    v[i] = f(p.x, p.y);
  }
  return v;
}

Vector extend_by_zero(const FESpace& space, const Vector& free_coeffs) {
  require(free_coeffs.size() == space.num_free(), ErrorKind::InvalidArgument,
          "extend_by_zero: vector length does not match the free DOF count");
  Vector all = Vector::Zero(space.num_dofs());
  for (int i = 0; i < space.num_free(); ++i) all[space.free_dofs[static_cast<std::size_t>(i)]] = free_coeffs[i];
  return all;
}

double l2_error_all(const FESpace& space, const Vector& all_coeffs, const SpatialFunction& f,
                    int quad_degree) {
  require(all_coeffs.size() == space.num_dofs(), ErrorKind::InvalidArgument,
          "l2_error_all: vector length does not match the DOF count");
  const TriMesh& mesh = *space.mesh;
  const ShapeTable table(space.degree, rule_for_degree(quad_degree));
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    const int* dof = space.element_dofs(t);
    for (int q = 0; q < table.rule.size(); ++q) {
      const Point2 p = geo.map(table.rule.points[static_cast<std::size_t>(q)]);
      double uh = 0.0;
      for (int k = 0; k < table.nloc; ++k) uh += all_coeffs[dof[k]] * table.value(q, k);
      const double diff = f(p.x, p.y) - uh;
      sum += table.rule.weights[static_cast<std::size_t>(q)] * std::abs(geo.det) * diff * diff;
    }
  }
  return std::sqrt(sum);
}

double l2_error(const FESpace& space, const Vector& free_coeffs, const SpatialFunction& f,
                int quad_degree) {
  return l2_error_all(space, extend_by_zero(space, free_coeffs), f, quad_degree);
}

double l2_norm(const FESpace& space, const SpatialFunction& f, int quad_degree) {
  return l2_error_all(space, Vector::Zero(space.num_dofs()), f, quad_degree);
}

FemOperators FemOperators::assemble(const FESpace& space, const std::array<double, 2>& b) {
  return {assemble_mass(space), assemble_stiffness(space), assemble_convection(space, b)};
}

}  // namespace vmspod::fem
