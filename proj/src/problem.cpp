#include "vmspod/problem.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vmspod/error.hpp"

namespace vmspod {

double TanhFront::value(double x, double y, double t) const {
  const double s = std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y);
  return amplitude_ * s * (std::tanh((x + y - t - 0.5) / width_) + 1.0);
}

SolutionJet TanhFront::jet(double x, double y, double t) const {
  constexpr double pi = std::numbers::pi;
  const double sx = std::sin(pi * x);
  const double sy = std::sin(pi * y);
  const double cx = std::cos(pi * x);
  const double cy = std::cos(pi * y);
  const double th = std::tanh((x + y - t - 0.5) / width_);
  const double sech2 = 1.0 - th * th;

  const double s = sx * sy;
  const double s_x = pi * cx * sy;
  const double s_y = pi * sx * cy;
  const double q = th + 1.0;
  const double q_x = sech2 / width_;  // also q_y, and -q_t
  const double q_xx = -2.0 * th * sech2 / (width_ * width_);

  SolutionJet j;
  j.value = amplitude_ * s * q;
  j.dt = -amplitude_ * s * q_x;
  j.dx = amplitude_ * (s_x * q + s * q_x);
  j.dy = amplitude_ * (s_y * q + s * q_x);
  j.laplacian = amplitude_ * (-2.0 * pi * pi * s * q + 2.0 * (s_x + s_y) * q_x + 2.0 * s * q_xx);
  return j;
}

int ProblemSpec::num_steps() const {
  require(dt > 0.0 && T > 0.0, ErrorKind::InvalidConfiguration, "T and dt must be positive");
  const double steps = std::round(T / dt);
  require(steps >= 1.0 && std::abs(steps * dt - T) <= 1e-12 * std::max(1.0, T),
          ErrorKind::InvalidConfiguration,
          "dt = " + std::to_string(dt) + " does not divide T = " + std::to_string(T));
  return static_cast<int>(steps);
}

void ProblemSpec::validate() const {
  require(exact != nullptr, ErrorKind::InvalidConfiguration, "problem has no exact solution");
  require(epsilon >= 0.0, ErrorKind::InvalidConfiguration, "epsilon must be non-negative");
  // constant b is divergence free, so g - div(b)/2 >= beta > 0 reduces to g > 0
  require(g > 0.0, ErrorKind::InvalidConfiguration, "reaction coefficient g must be positive");
  (void)num_steps();
}

ProblemSpec steep_front_problem(double epsilon, double T, double dt) {
  ProblemSpec p;
  p.epsilon = epsilon;
  p.T = T;
  p.dt = dt;
  p.exact = std::make_shared<TanhFront>(0.04, 0.5);
  return p;
}

}  // namespace vmspod
