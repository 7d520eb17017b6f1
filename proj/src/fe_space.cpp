#include "vmspod/fe_space.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "vmspod/error.hpp"

namespace vmspod::fem {

namespace {

bool on_unit_square_boundary(const Point2& p) {
  constexpr double tol = 1e-14;
  return std::abs(p.x) <= tol || std::abs(p.y) <= tol || std::abs(p.x - 1.0) <= tol ||
         std::abs(p.y - 1.0) <= tol;
}

}  // namespace

FESpace build_fespace(std::shared_ptr<const TriMesh> mesh, int degree) {
  require(mesh != nullptr, ErrorKind::InvalidArgument, "build_fespace: null mesh");
  require(degree == 1 || degree == 2, ErrorKind::InvalidArgument,
          "build_fespace: unsupported degree " + std::to_string(degree) + " (expected 1 or 2)");

  FESpace space;
  space.mesh = mesh;
  space.degree = degree;
  space.dofs_per_element = degree == 1 ? 3 : 6;
  space.dof_coords = mesh->nodes;
  space.dof_map.reserve(static_cast<std::size_t>(mesh->num_triangles() * space.dofs_per_element));

  std::unordered_map<std::uint64_t, int> edge_ids;
  const int num_nodes = mesh->num_nodes();
  for (const auto& tri : mesh->triangles) {
    for (int v : tri) space.dof_map.push_back(v);
    if (degree == 1) continue;
    constexpr int edge_vertices[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (const auto& ev : edge_vertices) {
      const int a = tri[static_cast<std::size_t>(ev[0])];
      const int b = tri[static_cast<std::size_t>(ev[1])];
      const auto key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
                       static_cast<std::uint64_t>(std::max(a, b));
      auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(edge_ids.size()));
      if (inserted) {
        const Point2& pa = mesh->nodes[static_cast<std::size_t>(a)];
        const Point2& pb = mesh->nodes[static_cast<std::size_t>(b)];
        space.dof_coords.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
      }
      space.dof_map.push_back(num_nodes + it->second);
    }
  }

  space.free_index.assign(space.dof_coords.size(), -1);
  for (int i = 0; i < space.num_dofs(); ++i) {
    if (on_unit_square_boundary(space.dof_coords[static_cast<std::size_t>(i)])) continue;
    space.free_index[static_cast<std::size_t>(i)] = static_cast<int>(space.free_dofs.size());
    space.free_dofs.push_back(i);
  }
  return space;
}

FESpace build_fespace(const TriMesh& mesh, int degree) {
  return build_fespace(std::make_shared<const TriMesh>(mesh), degree);
}

ElementGeometry element_geometry(const Point2& a, const Point2& b, const Point2& c) {
  ElementGeometry g;
  g.origin = a;
  g.jacobian = {b.x - a.x, c.x - a.x, b.y - a.y, c.y - a.y};
  g.det = g.jacobian[0] * g.jacobian[3] - g.jacobian[1] * g.jacobian[2];
  const double inv = 1.0 / g.det;
  g.inv_jacobian = {g.jacobian[3] * inv, -g.jacobian[1] * inv, -g.jacobian[2] * inv,
                    g.jacobian[0] * inv};
  return g;
}

ElementGeometry element_geometry(const TriMesh& mesh, int triangle) {
  const auto& t = mesh.triangles[static_cast<std::size_t>(triangle)];
  return element_geometry(mesh.nodes[static_cast<std::size_t>(t[0])],
                          mesh.nodes[static_cast<std::size_t>(t[1])],
                          mesh.nodes[static_cast<std::size_t>(t[2])]);
}

void reference_shape(int degree, const Point2& ref, double* values, double* grad_xi,
                     double* grad_eta) {
  const double l0 = 1.0 - ref.x - ref.y;
  const double l1 = ref.x;
  const double l2 = ref.y;
  if (degree == 1) {
    values[0] = l0;
    values[1] = l1;
    values[2] = l2;
    grad_xi[0] = -1.0;
    grad_xi[1] = 1.0;
    grad_xi[2] = 0.0;
    grad_eta[0] = -1.0;
    grad_eta[1] = 0.0;
    grad_eta[2] = 1.0;
    return;
  }
  // vertices, then edges (0,1), (1,2), (2,0)
  values[0] = l0 * (2.0 * l0 - 1.0);
  values[1] = l1 * (2.0 * l1 - 1.0);
  values[2] = l2 * (2.0 * l2 - 1.0);
  values[3] = 4.0 * l0 * l1;
  values[4] = 4.0 * l1 * l2;
  values[5] = 4.0 * l2 * l0;

  grad_xi[0] = -(4.0 * l0 - 1.0);
  grad_eta[0] = -(4.0 * l0 - 1.0);
  grad_xi[1] = 4.0 * l1 - 1.0;
  grad_eta[1] = 0.0;
  grad_xi[2] = 0.0;
  grad_eta[2] = 4.0 * l2 - 1.0;
  grad_xi[3] = 4.0 * (l0 - l1);
  grad_eta[3] = -4.0 * l1;
  grad_xi[4] = 4.0 * l2;
  grad_eta[4] = 4.0 * l1;
  grad_xi[5] = -4.0 * l2;
  grad_eta[5] = 4.0 * (l0 - l2);
}

ShapeTable::ShapeTable(int degree_, TriangleRule rule_)
    : degree(degree_), nloc(degree_ == 1 ? 3 : 6), rule(std::move(rule_)) {
  const auto n = static_cast<std::size_t>(rule.size() * nloc);
  values.resize(n);
  grad_xi.resize(n);
  grad_eta.resize(n);
  for (int q = 0; q < rule.size(); ++q) {
    const auto off = static_cast<std::size_t>(q * nloc);
    reference_shape(degree, rule.points[static_cast<std::size_t>(q)], values.data() + off,
                    grad_xi.data() + off, grad_eta.data() + off);
  }
}

}  // namespace vmspod::fem
