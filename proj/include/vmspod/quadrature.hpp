#pragma once

#include <vector>

#include "vmspod/mesh.hpp"

namespace vmspod::fem {

/// Quadrature on the reference triangle {(xi, eta) : xi, eta >= 0, xi + eta <= 1}.
/// Weights sum to the reference area 1/2.
struct TriangleRule {
  int degree = 0;  // polynomial degree integrated exactly
  std::vector<Point2> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// 3-point interior rule, exact for degree 2.
TriangleRule degree2_rule();

/// 6-point symmetric rule, exact for degree 4.
TriangleRule degree4_rule();

/// Gauss-Legendre tensor rule pulled back through the collapsed (Duffy) map;
/// `n` points per direction, exact for total degree 2n - 2.
TriangleRule collapsed_gauss_rule(int n);

/// Cheapest rule in this family that integrates total degree `degree` exactly.
TriangleRule rule_for_degree(int degree);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace vmspod::fem
