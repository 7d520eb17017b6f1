#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vmspod/error.hpp"
#include "vmspod/problem.hpp"

using namespace vmspod;

namespace {

// Central differences with step 1e-5 on the exact solution alone.
double fd_residual(const ProblemSpec& p, double x, double y, double t) {
  const double k = 1e-5;
  auto u = [&](double a, double b, double c) { return p.exact->value(a, b, c); };
  const double ut = (u(x, y, t + k) - u(x, y, t - k)) / (2 * k);
  const double ux = (u(x + k, y, t) - u(x - k, y, t)) / (2 * k);
  const double uy = (u(x, y + k, t) - u(x, y - k, t)) / (2 * k);
  const double lap = (u(x + k, y, t) + u(x - k, y, t) + u(x, y + k, t) + u(x, y - k, t) -
                      4 * u(x, y, t)) / (k * k);
  return ut - p.epsilon * lap + p.b[0] * ux + p.b[1] * uy + p.g * u(x, y, t);
}

}  // namespace

TEST(Problem, ForcingMatchesFiniteDifferences) {
  std::mt19937_64 rng(20130101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double eps : {1e-4, 1e-2}) {
    ProblemSpec p = steep_front_problem(eps);
    for (int i = 0; i < 100; ++i) {
      const double x = unit(rng), y = unit(rng), t = unit(rng);
      EXPECT_LE(std::abs(p.forcing(x, y, t) - fd_residual(p, x, y, t)), 1e-6)
          << "eps=" << eps << " at (" << x << ", " << y << ", " << t << ")";
    }
  }
}

TEST(Problem, JetAgreesWithValue) {
  const TanhFront u(0.2, 0.5);
  for (double x : {0.1, 0.45, 0.9}) {
    const SolutionJet j = u.jet(x, 0.3, 0.25);
    EXPECT_DOUBLE_EQ(j.value, u.value(x, 0.3, 0.25));
  }
}

TEST(Problem, VanishesOnBoundary) {
  const TanhFront u;
  for (double s : {0.0, 0.3, 0.77, 1.0}) {
    EXPECT_NEAR(u.value(0.0, s, 0.4), 0.0, 1e-16);
    EXPECT_NEAR(u.value(s, 1.0, 0.4), 0.0, 1e-15);
  }
}

TEST(Problem, StepCount) {
  EXPECT_EQ(steep_front_problem(1e-4, 1.0, 2e-3).num_steps(), 500);
  EXPECT_EQ(steep_front_problem(1e-4, 1.0, 1e-4).num_steps(), 10000);
  EXPECT_THROW(steep_front_problem(1e-4, 1.0, 3e-1).num_steps(), Error);
}

TEST(Problem, ValidateRejectsBadCoefficients) {
  ProblemSpec p;
  EXPECT_NO_THROW(p.validate());
  p.g = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = ProblemSpec{};
  p.epsilon = -1.0;
  EXPECT_THROW(p.validate(), Error);
  p = ProblemSpec{};
  p.dt = 0.0;
  EXPECT_THROW(p.validate(), Error);
}
