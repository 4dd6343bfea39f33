#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stpa/assembly.hpp"
#include "stpa/error.hpp"
#include "stpa/propagators.hpp"
#include "stpa/residuals.hpp"
#include "stpa/selftest.hpp"

using namespace stpa;
using namespace stpa::test;

namespace {

// One interior hat on (0, 1): M = 1/3, A = 4, integral of the hat = 1/2.
const FeSpace kHat = uniform_space(2, 1);

Vector scalar(double v) { return Vector::Constant(1, v); }

Trajectory linear_weight(const TimeGrid& grid, double w0, double w1) {
  return Trajectory(kHat, grid, 1, NodalField(kHat, scalar(w0)), {scalar(w0), scalar(w1)});
}

const SpaceTimeFunction kZero = [](double, double) { return 0.0; };

}  // namespace

TEST(ResidualFine, ScalarImplicitEulerStep) {
  const double dt = 0.2, u0 = 0.7, u1 = 0.4, w0 = 1.5, w1 = -0.5;
  const auto grid = TimeGrid::uniform(0, dt, 1);
  const Trajectory u(kHat, grid, 0, NodalField(kHat, scalar(u0)), {scalar(u1)});
  const auto weight = linear_weight(grid, w0, w1);
  // int (f, phi) - a(U, phi) dt - M (U1 - U0) phi(0), with f = 1 giving load 1/2.
  const double mean_w = 0.5 * (w0 + w1);
  const double expect = 0.5 * mean_w * dt - 4.0 * u1 * mean_w * dt - (u1 - u0) / 3.0 * w0;
  const auto r = residual_fine(u, weight, [](double, double) { return 1.0; });
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], expect, 1e-13);
  EXPECT_NEAR(residual_coarse(u, weight, [](double, double) { return 1.0; })[0], expect, 1e-13);
}

TEST(ResidualFine, ZeroProblem) {
  const FeSpace space = uniform_space(6, 2);
  const auto grid = TimeGrid::uniform(0, 1, 4);
  const auto u = propagate_be(space, grid, NodalField::zero(space), kZero);
  std::mt19937 rng(1);
  std::vector<Vector> w;
  for (int i = 0; i <= 4; ++i) w.push_back(random_vector(space.dof_count(), rng));
  const Trajectory weight(space, grid, 1, NodalField(space, w[0]), w);
  for (double v : residual_fine(u, weight, kZero)) EXPECT_EQ(v, 0.0);
}

TEST(ResidualFine, GalerkinOrthogonalityForStepwiseConstantWeights) {
  // Time-independent load so Gauss and right-endpoint load quadrature coincide.
  const FeSpace space = uniform_space(8, 2);
  const auto grid = TimeGrid::uniform(0, 0.5, 5);
  const SpaceTimeFunction f = [](double x, double) { return std::exp(x) * (1 - x); };
  const auto u = propagate_be(space, grid, interpolant(space, [](double x) { return std::sin(pi * x); }), f);
  std::mt19937 rng(3);
  const Vector w = random_vector(space.dof_count(), rng);
  std::vector<Vector> nodes;
  for (int n = 0; n < 5; ++n) nodes.push_back(random_vector(space.dof_count(), rng));
  const Trajectory weight(space, grid, 0, NodalField(space, w), nodes);
  for (double v : residual_fine(u, weight, f)) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(ResidualCg, ScalarLinearSlab) {
  const double dt = 0.3, a = 0.9, b = 0.2, w0 = 0.4, w1 = 1.3;
  const auto grid = TimeGrid::uniform(0, dt, 1);
  const Trajectory u(kHat, grid, 1, NodalField(kHat, scalar(a)), {scalar(a), scalar(b)});
  const auto weight = linear_weight(grid, w0, w1);
  const double int_uw = dt * (a * w0 / 3 + a * w1 / 6 + b * w0 / 6 + b * w1 / 3);
  // f = 2 t gives load t; int t phi(t) dt = dt^2 (w0/6 + w1/3).
  const double load = dt * dt * (w0 / 6 + w1 / 3);
  const double expect = load - (b - a) / 3.0 * 0.5 * (w0 + w1) - 4.0 * int_uw;
  const auto r = residual_cg(u, weight, [](double, double t) { return 2.0 * t; });
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], expect, 1e-13);
}

TEST(ResidualCg, InitialJumpEntersFirstStepOnly) {
  const double dt = 0.1;
  const auto grid = TimeGrid::uniform(0, 2 * dt, 2);
  const Trajectory u(kHat, grid, 1, NodalField(kHat, scalar(1.0)), {scalar(0.8), scalar(0.8), scalar(0.8)});
  const Trajectory w(kHat, grid, 0, NodalField(kHat, scalar(1.0)), {scalar(1.0), scalar(1.0)});
  const auto r = residual_cg(u, w, kZero);
  EXPECT_NEAR(r[0], -4.0 * 0.8 * dt - (0.8 - 1.0) / 3.0, 1e-14);
  EXPECT_NEAR(r[1], -4.0 * 0.8 * dt, 1e-14);
}

TEST(ResidualCg, OrthogonalToLowerDegreeWeights) {
  const FeSpace space = uniform_space(6, 2);
  // Polynomial in time so both the solver and the residual integrate the load exactly.
  const SpaceTimeFunction f = [](double x, double t) { return std::exp(x) * (1 - x) * (1 + t + t * t); };
  const auto grid = TimeGrid::uniform(0, 0.6, 3);
  const auto u = propagate_cg(space, grid, 2, interpolant(space, [](double x) { return std::sin(pi * x); }), f);
  std::mt19937 rng(5);
  std::vector<Vector> nodes;
  for (int i = 0; i <= 3; ++i) nodes.push_back(random_vector(space.dof_count(), rng));
  // cG(2) test space: degree-1 polynomials per slab; a continuous linear weight lies in it.
  const Trajectory weight(space, grid, 1, NodalField(space, nodes[0]), nodes);
  for (double v : residual_cg(u, weight, f)) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(ResidualCg, RejectsImplicitEulerTrajectory) {
  const auto grid = TimeGrid::uniform(0, 1, 1);
  const Trajectory u(kHat, grid, 0, NodalField(kHat, scalar(0)), {scalar(0)});
  EXPECT_THROW(residual_cg(u, linear_weight(grid, 0, 0), kZero), Error);
}

TEST(Residuals, SelftestOrthogonality) {
  const auto r = check_galerkin_orthogonality();
  EXPECT_TRUE(r.passed) << r.detail;
}
