#pragma once

#include <array>
#include <memory>

namespace vmspod {

/// Value and the derivatives the manufactured forcing needs, at one (x, y, t).
struct SolutionJet {
  double value = 0.0;
  double dt = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double laplacian = 0.0;
};

/// Analytic solution of the convection-diffusion-reaction problem.
class ExactSolution {
 public:
  virtual ~ExactSolution() = default;
  virtual double value(double x, double y, double t) const = 0;
  virtual SolutionJet jet(double x, double y, double t) const = 0;
};

/// u = A sin(pi x) sin(pi y) [tanh((x + y - t - 0.5) / width) + 1].
/// The default amplitude/width pair is the steep front used for the ROM studies;
/// widening `width` gives a smooth solution for convergence checks.
class TanhFront final : public ExactSolution {
 public:
  explicit TanhFront(double width = 0.04, double amplitude = 0.5)
      : width_(width), amplitude_(amplitude) {}

  double value(double x, double y, double t) const override;
  SolutionJet jet(double x, double y, double t) const override;
  double width() const { return width_; }

 private:
  double width_;
  double amplitude_;
};

class ZeroSolution final : public ExactSolution {
 public:
  double value(double, double, double) const override { return 0.0; }
  SolutionJet jet(double, double, double) const override { return {}; }
};

/// -eps Lap u + b.grad u + g u + u_t = f on the unit square, u = 0 on the boundary,
/// with f manufactured from `exact`.
struct ProblemSpec {
  double epsilon = 1e-4;
  std::array<double, 2> b{0.5, 0.86602540378443864676};  // (cos pi/3, sin pi/3)
  double g = 1.0;
  double T = 1.0;
  double dt = 2e-3;
  std::shared_ptr<const ExactSolution> exact = std::make_shared<TanhFront>();

  /// Number of time steps N with N * dt = T; throws if dt does not divide T.
  int num_steps() const;
  double time(int n) const { return n * dt; }

  double forcing(double x, double y, double t) const {
    const SolutionJet j = exact->jet(x, y, t);
    return j.dt - epsilon * j.laplacian + b[0] * j.dx + b[1] * j.dy + g * j.value;
  }

  /// Checks coercivity (g > 0 for constant b), positivity of T and dt, and step divisibility.
  void validate() const;
};

/// Desk-scale defaults for the steep-front problem.
ProblemSpec steep_front_problem(double epsilon = 1e-4, double T = 1.0, double dt = 2e-3);

}  // namespace vmspod
