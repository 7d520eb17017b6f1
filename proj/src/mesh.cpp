#include "vmspod/mesh.hpp"

#include "vmspod/error.hpp"

namespace vmspod::fem {

double TriMesh::signed_area(int triangle) const {
  const auto& t = triangles[static_cast<std::size_t>(triangle)];
  const Point2& a = nodes[static_cast<std::size_t>(t[0])];
  const Point2& b = nodes[static_cast<std::size_t>(t[1])];
  const Point2& c = nodes[static_cast<std::size_t>(t[2])];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

TriMesh build_uniform_mesh(int nx) {
  require(nx >= 2, ErrorKind::InvalidArgument,
          "build_uniform_mesh: nx must be >= 2, got " + std::to_string(nx));

  TriMesh mesh;
  mesh.nx = nx;
  mesh.h = 1.0 / nx;
  const int n1 = nx + 1;
  const auto id = [n1](int i, int j) { return j * n1 + i; };

  mesh.nodes.reserve(static_cast<std::size_t>(n1 * n1));
  mesh.on_boundary.assign(static_cast<std::size_t>(n1 * n1), false);
  for (int j = 0; j < n1; ++j) {
    for (int i = 0; i < n1; ++i) {
      // i / nx rather than i * h keeps the coordinates 0 and 1 exact
      mesh.nodes.push_back({static_cast<double>(i) / nx, static_cast<double>(j) / nx});
      if (i == 0 || j == 0 || i == nx || j == nx) {
        mesh.boundary_nodes.push_back(id(i, j));
        mesh.on_boundary[static_cast<std::size_t>(id(i, j))] = true;
      }
    }
  }

  mesh.triangles.reserve(static_cast<std::size_t>(2 * nx * nx));
  for (int j = 0; j < nx; ++j) {
    for (int i = 0; i < nx; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return mesh;
}

}  // namespace vmspod::fem
