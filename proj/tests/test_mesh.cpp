#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "vmspod/error.hpp"
#include "vmspod/fe_space.hpp"
#include "vmspod/mesh.hpp"
#include "vmspod/quadrature.hpp"

using namespace vmspod;
using namespace vmspod::fem;

TEST(Mesh, SmallestGridCounts) {
  const TriMesh m = build_uniform_mesh(2);
  EXPECT_EQ(m.num_nodes(), 9);
  EXPECT_EQ(m.num_triangles(), 8);
  EXPECT_EQ(m.boundary_nodes.size(), 8u);
  EXPECT_DOUBLE_EQ(m.h, 0.5);
}

TEST(Mesh, FineGrid) {
  const TriMesh m = build_uniform_mesh(100);
  EXPECT_EQ(m.num_nodes(), 10201);
  EXPECT_DOUBLE_EQ(m.h, 0.01);
}

TEST(Mesh, AreaPartitionsUnitSquare) {
  for (int nx : {3, 7, 16}) {
    const TriMesh m = build_uniform_mesh(nx);
    double total = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) {
      EXPECT_GT(m.signed_area(t), 0.0);
      total += m.signed_area(t);
    }
    EXPECT_NEAR(total, 1.0, 1e-14) << "nx=" << nx;
  }
}

TEST(Mesh, RejectsTooCoarse) {
  for (int nx : {-1, 0, 1}) {
    try {
      build_uniform_mesh(nx);
      FAIL() << "nx=" << nx;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
  }
}

TEST(Mesh, Conforming) {
  const TriMesh m = build_uniform_mesh(6);
  std::map<std::pair<int, int>, int> uses;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      ++uses[{std::min(a, b), std::max(a, b)}];
    }
  for (const auto& [e, n] : uses) {
    const auto& p = m.nodes[e.first];
    const auto& q = m.nodes[e.second];
    const bool bnd = (p.x == q.x && (p.x == 0.0 || p.x == 1.0)) ||
                     (p.y == q.y && (p.y == 0.0 || p.y == 1.0));
    EXPECT_EQ(n, bnd ? 1 : 2);
  }
}

TEST(Mesh, BoundaryIsExactlyTheSquareEdge) {
  const TriMesh m = build_uniform_mesh(5);
  std::set<int> expected;
  for (int i = 0; i < m.num_nodes(); ++i) {
    const auto& p = m.nodes[i];
    if (p.x == 0.0 || p.y == 0.0 || p.x == 1.0 || p.y == 1.0) expected.insert(i);
  }
  EXPECT_EQ(std::set<int>(m.boundary_nodes.begin(), m.boundary_nodes.end()), expected);
}

TEST(Mesh, RefinementHalvesH) {
  EXPECT_DOUBLE_EQ(build_uniform_mesh(8).h, 2.0 * build_uniform_mesh(16).h);
}

TEST(FESpace, P1CoarseHasOneFreeDof) {
  const FESpace s = build_fespace(build_uniform_mesh(2), 1);
  EXPECT_EQ(s.num_free(), 1);
  EXPECT_DOUBLE_EQ(s.dof_coords[s.free_dofs[0]].x, 0.5);
  EXPECT_DOUBLE_EQ(s.dof_coords[s.free_dofs[0]].y, 0.5);
}

TEST(FESpace, P2CoarseFreeCountMatchesEnumeration) {
  const TriMesh m = build_uniform_mesh(2);
  const FESpace s = build_fespace(m, 2);
  const auto [total, interior] = oracle::count_p2_dofs(m);
  EXPECT_EQ(interior, 9);
  EXPECT_EQ(s.num_free(), interior);
  EXPECT_EQ(s.num_dofs(), total);
}

TEST(FESpace, P2FineTotalMatchesEnumeration) {
  const TriMesh m = build_uniform_mesh(100);
  const FESpace s = build_fespace(m, 2);
  const auto [total, interior] = oracle::count_p2_dofs(m);
  EXPECT_EQ(total, 40401);
  EXPECT_EQ(s.num_dofs(), total);
  EXPECT_EQ(s.num_free(), interior);
}

TEST(FESpace, FreeDofsAvoidBoundary) {
  for (int degree : {1, 2}) {
    const FESpace s = build_fespace(build_uniform_mesh(4), degree);
    for (int g : s.free_dofs) {
      const auto& p = s.dof_coords[g];
      EXPECT_GT(std::min({p.x, p.y, 1 - p.x, 1 - p.y}), 1e-14);
    }
    int boundary = 0;
    for (int g = 0; g < s.num_dofs(); ++g) boundary += s.free_index[g] < 0;
    EXPECT_EQ(s.num_free() + boundary, s.num_dofs());
  }
}

TEST(FESpace, EdgeDofsSharedBetweenNeighbours) {
  const FESpace s = build_fespace(build_uniform_mesh(3), 2);
  std::map<int, int> uses;
  for (int t = 0; t < s.mesh->num_triangles(); ++t)
    for (int k = 3; k < 6; ++k) ++uses[s.element_dofs(t)[k]];
  for (const auto& [dof, n] : uses) {
    const auto& p = s.dof_coords[dof];
    const bool bnd = std::min({p.x, p.y, 1 - p.x, 1 - p.y}) < 1e-14;
    EXPECT_EQ(n, bnd ? 1 : 2);
  }
}

TEST(FESpace, RejectsUnsupportedDegree) {
  const TriMesh m = build_uniform_mesh(2);
  for (int d : {0, 3}) {
    try {
      build_fespace(m, d);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
  }
}

TEST(FESpace, ShapeFunctionsMatchBarycentricForms) {
  const oracle::Tri ref{{0, 1, 0}, {0, 0, 1}};
  const Point2 pts[] = {{0.2, 0.3}, {0.7, 0.1}, {0.05, 0.9}};
  for (int degree : {1, 2}) {
    const int n = degree == 1 ? 3 : 6;
    for (const auto& p : pts) {
      double v[6], gx[6], gy[6];
      reference_shape(degree, p, v, gx, gy);
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += v[k];
      EXPECT_NEAR(sum, 1.0, 1e-14);
      const auto l = oracle::barycentric(ref, p.x, p.y);
      EXPECT_NEAR(v[0], degree == 1 ? l[0] : l[0] * (2 * l[0] - 1), 1e-14);
      if (degree == 2) {
        EXPECT_NEAR(v[3], 4 * l[0] * l[1], 1e-14);
      }
    }
  }
}

namespace {
double integrate_monomial(const TriangleRule& rule, int a, int b) {
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    s += rule.weights[q] * std::pow(rule.points[q].x, a) * std::pow(rule.points[q].y, b);
  return s;
}
// a! b! / (a + b + 2)!
double exact_monomial(int a, int b) {
  return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}
}  // namespace

TEST(Quadrature, RulesExactForTheirDegree) {
  const TriangleRule rules[] = {degree2_rule(), degree4_rule(), collapsed_gauss_rule(6),
                                rule_for_degree(10)};
  for (const auto& rule : rules) {
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    EXPECT_NEAR(wsum, 0.5, 1e-15);
    for (int a = 0; a <= rule.degree; ++a)
      for (int b = 0; a + b <= rule.degree; ++b)
        EXPECT_NEAR(integrate_monomial(rule, a, b), exact_monomial(a, b), 1e-15)
            << "degree " << rule.degree << " monomial " << a << "," << b;
  }
  EXPECT_EQ(degree2_rule().size(), 3);
  EXPECT_EQ(degree4_rule().size(), 6);
}

TEST(Quadrature, GaussLegendreUnit) {
  std::vector<double> x, w;
  gauss_legendre_unit(5, x, w);
  for (int p = 0; p <= 9; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], p);
    EXPECT_NEAR(s, 1.0 / (p + 1), 1e-15);
  }
}
