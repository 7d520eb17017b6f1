// Independent reference computations for the unit and acceptance tests.
// Nothing here calls the library's quadrature, shape functions or solvers.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vmspod/fe_space.hpp"

namespace oracle {

using Fn = std::function<double(double, double)>;

struct Tri {
  double x[3];
  double y[3];
  double area() const {
    return 0.5 * std::abs((x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]));
  }
};

// Radon's 7-point rule, degree 5, barycentric points and weights summing to 1.
inline double radon7(const Tri& t, const Fn& f) {
  static const double w0 = 0.225;
  static const double a1 = 0.059715871789769820, b1 = 0.470142064105115090,
                      w1 = 0.132394152788506181;
  static const double a2 = 0.797426985353087322, b2 = 0.101286507323456339,
                      w2 = 0.125939180544827153;
  auto at = [&](double l0, double l1, double l2) {
    return f(l0 * t.x[0] + l1 * t.x[1] + l2 * t.x[2], l0 * t.y[0] + l1 * t.y[1] + l2 * t.y[2]);
  };
  double s = w0 * at(1.0 / 3, 1.0 / 3, 1.0 / 3);
  s += w1 * (at(a1, b1, b1) + at(b1, a1, b1) + at(b1, b1, a1));
  s += w2 * (at(a2, b2, b2) + at(b2, a2, b2) + at(b2, b2, a2));
  return s * t.area();
}

inline std::array<Tri, 4> split4(const Tri& t) {
  const double mx[3] = {0.5 * (t.x[0] + t.x[1]), 0.5 * (t.x[1] + t.x[2]), 0.5 * (t.x[2] + t.x[0])};
  const double my[3] = {0.5 * (t.y[0] + t.y[1]), 0.5 * (t.y[1] + t.y[2]), 0.5 * (t.y[2] + t.y[0])};
  return {Tri{{t.x[0], mx[0], mx[2]}, {t.y[0], my[0], my[2]}},
          Tri{{mx[0], t.x[1], mx[1]}, {my[0], t.y[1], my[1]}},
          Tri{{mx[2], mx[1], t.x[2]}, {my[2], my[1], t.y[2]}},
          Tri{{mx[0], mx[1], mx[2]}, {my[0], my[1], my[2]}}};
}

// Adaptive midpoint-subdivision quadrature.
inline double adaptive(const Tri& t, const Fn& f, double tol, int depth = 0,
                       double coarse = std::nan("")) {
  if (std::isnan(coarse)) coarse = radon7(t, f);
  const auto kids = split4(t);
  double parts[4];
  double fine = 0.0;
  for (int k = 0; k < 4; ++k) fine += (parts[k] = radon7(kids[k], f));
  if (std::abs(fine - coarse) <= tol || depth >= 14) return fine;
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += adaptive(kids[k], f, 0.25 * tol, depth + 1, parts[k]);
  return s;
}

// Uniform refinement, `levels` times; exact for degree 5 at any level.
inline double refined(const Tri& t, const Fn& f, int levels) {
  if (levels == 0) return radon7(t, f);
  double s = 0.0;
  for (const Tri& k : split4(t)) s += refined(k, f, levels - 1);
  return s;
}

inline Tri triangle_of(const vmspod::fem::TriMesh& mesh, int t) {
  Tri out{};
  for (int k = 0; k < 3; ++k) {
    out.x[k] = mesh.nodes[mesh.triangles[t][k]].x;
    out.y[k] = mesh.nodes[mesh.triangles[t][k]].y;
  }
  return out;
}

inline std::array<double, 3> barycentric(const Tri& t, double x, double y) {
  const double det = (t.x[1] - t.x[0]) * (t.y[2] - t.y[0]) - (t.x[2] - t.x[0]) * (t.y[1] - t.y[0]);
  const double l1 = ((x - t.x[0]) * (t.y[2] - t.y[0]) - (t.x[2] - t.x[0]) * (y - t.y[0])) / det;
  const double l2 = ((t.x[1] - t.x[0]) * (y - t.y[0]) - (x - t.x[0]) * (t.y[1] - t.y[0])) / det;
  return {1.0 - l1 - l2, l1, l2};
}

// Gradients of the barycentric coordinates (constant on the triangle).
inline std::array<std::array<double, 2>, 3> barycentric_gradients(const Tri& t) {
  const double det = (t.x[1] - t.x[0]) * (t.y[2] - t.y[0]) - (t.x[2] - t.x[0]) * (t.y[1] - t.y[0]);
  std::array<std::array<double, 2>, 3> g{};
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    g[k] = {(t.y[a] - t.y[b]) / det, (t.x[b] - t.x[a]) / det};
  }
  return g;
}

// The global basis function attached to a DOF, restricted to triangle t. It is
// identified purely by the DOF's coordinate: a vertex gives the P1/P2 vertex
// function, an edge midpoint the P2 bubble 4 l_a l_b.
struct LocalBasis {
  int kind = -1;  // 0 vertex, 1 edge
  int a = -1;
  int b = -1;
};

inline LocalBasis classify(const Tri& t, double px, double py) {
  auto same = [](double u, double v) { return std::abs(u - v) < 1e-12; };
  for (int k = 0; k < 3; ++k)
    if (same(px, t.x[k]) && same(py, t.y[k])) return {0, k, -1};
  for (int k = 0; k < 3; ++k) {
    const int l = (k + 1) % 3;
    if (same(px, 0.5 * (t.x[k] + t.x[l])) && same(py, 0.5 * (t.y[k] + t.y[l]))) return {1, k, l};
  }
  throw std::logic_error("dof not on triangle");
}

inline double basis_value(int degree, const LocalBasis& lb, const std::array<double, 3>& l) {
  if (lb.kind == 0) return degree == 1 ? l[lb.a] : l[lb.a] * (2.0 * l[lb.a] - 1.0);
  return 4.0 * l[lb.a] * l[lb.b];
}

inline std::array<double, 2> basis_gradient(int degree, const LocalBasis& lb,
                                            const std::array<double, 3>& l,
                                            const std::array<std::array<double, 2>, 3>& gl) {
  std::array<double, 2> g{};
  for (int d = 0; d < 2; ++d) {
    if (lb.kind == 0)
      g[d] = degree == 1 ? gl[lb.a][d] : (4.0 * l[lb.a] - 1.0) * gl[lb.a][d];
    else
      g[d] = 4.0 * (gl[lb.a][d] * l[lb.b] + l[lb.a] * gl[lb.b][d]);
  }
  return g;
}

// Value and gradient of a full-DOF coefficient vector at (x, y) inside triangle t.
struct FeEval {
  double value = 0.0;
  double gx = 0.0;
  double gy = 0.0;
};

inline FeEval evaluate(const vmspod::fem::FESpace& space, const Eigen::VectorXd& all, int t,
                       double x, double y) {
  const Tri tri = triangle_of(*space.mesh, t);
  const auto l = barycentric(tri, x, y);
  const auto gl = barycentric_gradients(tri);
  FeEval out;
  const int* dofs = space.element_dofs(t);
  for (int k = 0; k < space.dofs_per_element; ++k) {
    const auto& p = space.dof_coords[dofs[k]];
    const LocalBasis lb = classify(tri, p.x, p.y);
    const double c = all[dofs[k]];
    out.value += c * basis_value(space.degree, lb, l);
    const auto g = basis_gradient(space.degree, lb, l, gl);
    out.gx += c * g[0];
    out.gy += c * g[1];
  }
  return out;
}

inline Eigen::VectorXd extend(const vmspod::fem::FESpace& space, const Eigen::VectorXd& free) {
  Eigen::VectorXd all = Eigen::VectorXd::Zero(space.num_dofs());
  for (int i = 0; i < space.num_free(); ++i) all[space.free_dofs[i]] = free[i];
  return all;
}

// (f, phi_i) for every free DOF, each triangle integrated adaptively.
inline Eigen::VectorXd load_vector(const vmspod::fem::FESpace& space, const Fn& f, double tol) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.num_free());
  const auto& mesh = *space.mesh;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Tri tri = triangle_of(mesh, t);
    const int* dofs = space.element_dofs(t);
    for (int k = 0; k < space.dofs_per_element; ++k) {
      const int fi = space.free_index[dofs[k]];
      if (fi < 0) continue;
      const auto& p = space.dof_coords[dofs[k]];
      const LocalBasis lb = classify(tri, p.x, p.y);
      const int deg = space.degree;
      out[fi] += adaptive(
          tri, [&](double x, double y) { return f(x, y) * basis_value(deg, lb, barycentric(tri, x, y)); },
          tol);
    }
  }
  return out;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// Interior P2 DOFs counted straight from the triangle list: interior nodes plus
// distinct edges whose midpoint is off the boundary.
inline std::pair<int, int> count_p2_dofs(const vmspod::fem::TriMesh& mesh) {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  auto boundary = [](double x, double y) {
    return std::abs(x) < 1e-14 || std::abs(y) < 1e-14 || std::abs(x - 1) < 1e-14 ||
           std::abs(y - 1) < 1e-14;
  };
  int interior = 0;
  for (const auto& p : mesh.nodes) interior += !boundary(p.x, p.y);
  for (const auto& [a, b] : edges)
    interior += !boundary(0.5 * (mesh.nodes[a].x + mesh.nodes[b].x),
                          0.5 * (mesh.nodes[a].y + mesh.nodes[b].y));
  return {mesh.num_nodes() + static_cast<int>(edges.size()), interior};
}

// Gradient fields of free-DOF vectors sampled at a fixed composite rule:
// every triangle refined `levels` times, Radon points on each piece.
struct GradientSamples {
  std::vector<double> weight;
  std::vector<Eigen::MatrixXd> grad;  // one (points x 2) block per field
  std::vector<Eigen::VectorXd> value;
};

inline GradientSamples sample_fields(const vmspod::fem::FESpace& space,
                                     const std::vector<Eigen::VectorXd>& free_fields, int levels) {
  static const double w0 = 0.225;
  static const double a1 = 0.059715871789769820, b1 = 0.470142064105115090,
                      w1 = 0.132394152788506181;
  static const double a2 = 0.797426985353087322, b2 = 0.101286507323456339,
                      w2 = 0.125939180544827153;
  const double bary[7][4] = {{1.0 / 3, 1.0 / 3, 1.0 / 3, w0}, {a1, b1, b1, w1}, {b1, a1, b1, w1},
                             {b1, b1, a1, w1},                 {a2, b2, b2, w2}, {b2, a2, b2, w2},
                             {b2, b2, a2, w2}};
  std::vector<std::pair<int, std::array<double, 3>>> pts;  // (triangle, x, y, w)
  const auto& mesh = *space.mesh;
  std::function<void(int, const Tri&, int)> walk = [&](int t, const Tri& piece, int lev) {
    if (lev == 0) {
      for (const auto& q : bary) {
        const double x = q[0] * piece.x[0] + q[1] * piece.x[1] + q[2] * piece.x[2];
        const double y = q[0] * piece.y[0] + q[1] * piece.y[1] + q[2] * piece.y[2];
        pts.push_back({t, {x, y, q[3] * piece.area()}});
      }
      return;
    }
    for (const Tri& k : split4(piece)) walk(t, k, lev - 1);
  };
  for (int t = 0; t < mesh.num_triangles(); ++t) walk(t, triangle_of(mesh, t), levels);

  GradientSamples out;
  out.weight.reserve(pts.size());
  for (const auto& p : pts) out.weight.push_back(p.second[2]);
  for (const auto& field : free_fields) {
    const Eigen::VectorXd all = extend(space, field);
    Eigen::MatrixXd g(pts.size(), 2);
    Eigen::VectorXd v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const FeEval e = evaluate(space, all, pts[i].first, pts[i].second[0], pts[i].second[1]);
      g(i, 0) = e.gx;
      g(i, 1) = e.gy;
      v[i] = e.value;
    }
    out.grad.push_back(std::move(g));
    out.value.push_back(std::move(v));
  }
  return out;
}

inline double grad_inner(const GradientSamples& s, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.weight.size(); ++i)
    acc += s.weight[i] * (a(i, 0) * b(i, 0) + a(i, 1) * b(i, 1));
  return acc;
}

// (P'_R grad phi_j, P'_R grad phi_i) with P_R assembled explicitly: each
// gradient field is projected onto span{grad phi_1..R} by solving its own Gram
// system, the fluctuation is formed pointwise and then integrated.
inline Eigen::MatrixXd explicit_vms(const vmspod::fem::FESpace& space,
                                    const std::vector<Eigen::VectorXd>& modes, int R, int levels) {
  const int r = static_cast<int>(modes.size());
  const GradientSamples s = sample_fields(space, modes, levels);
  std::vector<std::vector<double>> G(R, std::vector<double>(R));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < R; ++j) G[i][j] = grad_inner(s, s.grad[i], s.grad[j]);
  std::vector<Eigen::MatrixXd> fluct;
  for (int k = 0; k < r; ++k) {
    Eigen::MatrixXd f = s.grad[k];
    if (R > 0) {
      std::vector<double> rhs(R);
      for (int i = 0; i < R; ++i) rhs[i] = grad_inner(s, s.grad[i], s.grad[k]);
      const auto c = dense_solve(G, rhs);
      for (int i = 0; i < R; ++i) f -= c[i] * s.grad[i];
    }
    fluct.push_back(std::move(f));
  }
  Eigen::MatrixXd out(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out(i, j) = grad_inner(s, fluct[i], fluct[j]);
  return out;
}

// Least-squares slope of y against x.
inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
