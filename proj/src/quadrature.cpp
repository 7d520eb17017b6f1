#include "vmspod/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "vmspod/error.hpp"

namespace vmspod::fem {

TriangleRule degree2_rule() {
  TriangleRule rule;
  rule.degree = 2;
  rule.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
  rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
  return rule;
}

TriangleRule degree4_rule() {
  constexpr double a1 = 0.44594849091596488632;
  constexpr double w1 = 0.22338158967801146570 / 2.0;
  constexpr double a2 = 0.09157621350977074346;
  constexpr double w2 = 0.10995174365532186764 / 2.0;
  TriangleRule rule;
  rule.degree = 4;
  rule.points = {{a1, a1}, {1.0 - 2.0 * a1, a1}, {a1, 1.0 - 2.0 * a1},
                 {a2, a2}, {1.0 - 2.0 * a2, a2}, {a2, 1.0 - 2.0 * a2}};
  rule.weights = {w1, w1, w1, w2, w2, w2};
  return rule;
}

void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  require(n >= 1, ErrorKind::InvalidArgument, "gauss_legendre_unit: n must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    // Newton on P_n starting from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const auto idx = static_cast<std::size_t>(k);
    nodes[idx] = 0.5 * (1.0 - x);
    weights[idx] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2) scaled by 1/2
  }
}

TriangleRule collapsed_gauss_rule(int n) {
  std::vector<double> s;
  std::vector<double> w;
  gauss_legendre_unit(n, s, w);
  TriangleRule rule;
  rule.degree = 2 * n - 2;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u = s[static_cast<std::size_t>(i)];
      const double v = s[static_cast<std::size_t>(j)];
      rule.points.push_back({u, v * (1.0 - u)});
      rule.weights.push_back(w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] *
                             (1.0 - u));
    }
  }
  return rule;
}

TriangleRule rule_for_degree(int degree) {
  if (degree <= 2) return degree2_rule();
  if (degree <= 4) return degree4_rule();
  return collapsed_gauss_rule((degree + 3) / 2);
}

}  // namespace vmspod::fem
