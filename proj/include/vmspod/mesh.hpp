#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace vmspod::fem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class DiagonalOrientation : std::uint8_t { LowerLeftToUpperRight };

/// Uniform triangulation of the unit square. Every grid cell is split by the
/// same diagonal, so node and triangle numbering is fully determined by `nx`.
struct TriMesh {
  int nx = 0;
  double h = 0.0;
  DiagonalOrientation diagonal = DiagonalOrientation::LowerLeftToUpperRight;
  std::vector<Point2> nodes;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise
  std::vector<int> boundary_nodes;            // sorted ascending
  std::vector<bool> on_boundary;              // indexed by node

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  double signed_area(int triangle) const;
};

/// Grid node (i, j) has index j * (nx + 1) + i.
TriMesh build_uniform_mesh(int nx);

}  // namespace vmspod::fem
