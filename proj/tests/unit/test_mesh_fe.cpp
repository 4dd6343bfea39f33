#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stpa/assembly.hpp"
#include "stpa/banded.hpp"
#include "stpa/error.hpp"
#include "stpa/quadrature.hpp"

using namespace stpa;
using namespace stpa::test;

TEST(Mesh, RejectsDegenerateVertices) {
  EXPECT_THROW(SpatialMesh({0.0, 0.5, 0.5, 1.0}), ConfigError);
  EXPECT_THROW(SpatialMesh({0.0}), ConfigError);
  EXPECT_THROW(SpatialMesh::uniform(0.0, 1.0, 0), ConfigError);
}

TEST(Mesh, FindElementPrefersRightNeighbourAtInteriorVertex) {
  const auto mesh = SpatialMesh::uniform(0.0, 1.0, 4);
  EXPECT_EQ(mesh.find_element(0.0), 0);
  EXPECT_EQ(mesh.find_element(0.25), 1);
  EXPECT_EQ(mesh.find_element(0.3), 1);
  EXPECT_EQ(mesh.find_element(1.0), 3);
}

TEST(Quadrature, GaussRulesIntegrateMonomialsExactly) {
  for (int n = 1; n <= 12; ++n) {
    const auto& rule = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.points[i], p);
      EXPECT_NEAR(s, 1.0 / (p + 1), 1e-13 / (p + 1)) << "n=" << n << " p=" << p;
    }
  }
}

TEST(Quadrature, LagrangeBasisIsNodalAndSumsToOne) {
  for (int q = 0; q <= 4; ++q) {
    LagrangeBasis basis(q);
    std::vector<double> v(basis.size()), d(basis.size());
    for (int j = 0; j < basis.size(); ++j) {
      basis.values(basis.nodes()[j], v);
      for (int i = 0; i < basis.size(); ++i) EXPECT_NEAR(v[i], i == j ? 1.0 : 0.0, 1e-14);
    }
    basis.values(0.37, v);
    basis.derivatives(0.37, d);
    double sv = 0, sd = 0;
    for (int i = 0; i < basis.size(); ++i) {
      sv += v[i];
      sd += d[i];
    }
    EXPECT_NEAR(sv, 1.0, 1e-14);
    EXPECT_NEAR(sd, 0.0, 1e-12);
  }
}

TEST(Quadrature, ShiftedLegendreOrthogonal) {
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      const double v = integrate([&](double x) { return shifted_legendre(a, x) * shifted_legendre(b, x); }, 0, 1);
      EXPECT_NEAR(v, a == b ? 1.0 / (2 * a + 1) : 0.0, 1e-13);
    }
}

TEST(Assembly, SingleInteriorHat) {
  const auto ops = assemble_operators(uniform_space(2, 1));
  ASSERT_EQ(ops.mass.matrix.size(), 1);
  EXPECT_NEAR(ops.mass.matrix(0, 0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(ops.stiffness.matrix(0, 0), 4.0, 1e-14);
}

TEST(Assembly, MatricesMatchQuadratureOfBasisProducts) {
  const FeSpace space = uniform_space(3, 2, 0.0, 1.5);
  const auto ops = assemble_operators(space);
  const int n = space.dof_count();
  const double h = 1e-4;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double m = integrate_against_basis(space, i, [&](double x) { return basis_value(space, j, x); });
      EXPECT_NEAR(ops.mass.matrix(i, j), m, 1e-12);
      // One-sided three-point differences stay inside the element and are exact for quadratics.
      double k = 0.0;
      for (int e = 0; e < space.mesh().element_count(); ++e) {
        const double a = space.mesh().element_left(e), b = a + space.mesh().element_length(e);
        auto dphi = [&](int dof, double x) {
          const double s = x < 0.5 * (a + b) ? h : -h;
          auto v = [&](double y) { return basis_value(space, dof, y); };
          return (-3 * v(x) + 4 * v(x + s) - v(x + 2 * s)) / (2 * s);
        };
        k += integrate([&](double x) { return dphi(i, x) * dphi(j, x); }, a, b);
      }
      EXPECT_NEAR(ops.stiffness.matrix(i, j), k, 1e-5);
    }
}

TEST(Assembly, SymmetricAndPositiveDefinite) {
  for (int q = 1; q <= 3; ++q) {
    const auto ops = assemble_operators(uniform_space(7, q));
    for (const auto* op : {&ops.mass, &ops.stiffness}) {
      const Eigen::MatrixXd d = op->matrix.to_dense();
      EXPECT_LE((d - d.transpose()).norm(), 1e-14 * d.norm());
      EXPECT_EQ(Eigen::LLT<Eigen::MatrixXd>(d).info(), Eigen::Success);
      EXPECT_NO_THROW(BandedCholesky(op->matrix));
    }
  }
}

TEST(Assembly, SmallestStiffnessEigenvalueApproximatesPiSquared) {
  const FeSpace space = uniform_space(20, 2);
  const auto ops = assemble_operators(space);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(ops.stiffness.matrix.to_dense(),
                                                                ops.mass.matrix.to_dense());
  EXPECT_NEAR(eig.eigenvalues().minCoeff(), pi * pi, 0.01 * pi * pi);
}

TEST(Assembly, LoadMatchesAdaptiveQuadrature) {
  const FeSpace space = uniform_space(10, 2);
  const double nu = 4.0;
  auto f = [&](double x, double t) {
    return std::sin(pi * x) * (pi * pi * std::cos(nu * pi * t) - nu * pi * std::sin(nu * pi * t));
  };
  const Vector load = assemble_load(space, 0.0, f);
  for (int i = 0; i < space.dof_count(); ++i) {
    const double ref = integrate_against_basis(space, i, [&](double x) { return pi * pi * std::sin(pi * x); });
    EXPECT_NEAR(load[i], ref, 1e-12);
  }
  EXPECT_EQ(max_abs(assemble_load(space, 0.3, [](double, double) { return 0.0; })), 0.0);
}

TEST(Assembly, ConstantLoadSumsToInteriorHatMass) {
  const FeSpace space = uniform_space(8, 1);
  const Vector load = assemble_load(space, [](double) { return 3.0; });
  // Interior hats cover (0,1) except half of each boundary element.
  EXPECT_NEAR(load.sum(), 3.0 * (1.0 - 1.0 / 8.0), 1e-13);
}

TEST(Assembly, MixedMatrixAgreesWithSquareOperators) {
  const FeSpace space = uniform_space(5, 2);
  const auto ops = assemble_operators(space);
  const Eigen::MatrixXd mm = Eigen::MatrixXd(assemble_mixed(space, space, FormKind::mass));
  const Eigen::MatrixXd ms = Eigen::MatrixXd(assemble_mixed(space, space, FormKind::stiffness));
  EXPECT_LE((mm - ops.mass.matrix.to_dense()).norm(), 1e-14);
  EXPECT_LE((ms - ops.stiffness.matrix.to_dense()).norm(), 1e-12);
}

TEST(Projection, IdentityOnOwnSpace) {
  const FeSpace space = uniform_space(6, 2);
  std::mt19937 rng(7);
  const NodalField f(space, random_vector(space.dof_count(), rng));
  for (auto mode : {ProjectionMode::l2_projection, ProjectionMode::nodal_interpolation}) {
    const NodalField g = project_field(f, space, mode);
    EXPECT_LE(max_abs(g.coefficients - f.coefficients), 1e-12);
  }
  EXPECT_EQ(max_abs(project_field([](double) { return 0.0; }, space, ProjectionMode::l2_projection).coefficients), 0.0);
}

TEST(Projection, L2BeatsInterpolationAndBothSecondOrder) {
  auto u0 = [](double x) { return std::sin(pi * x); };
  double prev_l2 = 0, prev_ip = 0;
  for (int n : {20, 40}) {
    const FeSpace space = uniform_space(n, 1);
    const double e_l2 = l2_error(project_field(u0, space, ProjectionMode::l2_projection), u0);
    const double e_ip = l2_error(project_field(u0, space, ProjectionMode::nodal_interpolation), u0);
    EXPECT_LE(e_l2, e_ip);
    if (prev_l2 > 0) {
      EXPECT_NEAR(prev_l2 / e_l2, 4.0, 0.2);
      EXPECT_NEAR(prev_ip / e_ip, 4.0, 0.2);
    }
    prev_l2 = e_l2;
    prev_ip = e_ip;
  }
}

TEST(Projection, LiftReproducesPointValues) {
  const FeSpace coarse = uniform_space(9, 1);
  const FeSpace fine = uniform_space(9, 3);
  std::mt19937 rng(3);
  const NodalField f(coarse, random_vector(coarse.dof_count(), rng));
  const NodalField g = lift(f, fine);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int e = 0; e < 9; ++e)
    for (int k = 0; k < 10; ++k) {
      const double x = (e + u(rng)) / 9.0;
      EXPECT_NEAR(f(x), g(x), 1e-13);
    }
}

TEST(Banded, TrivialSolves) {
  SymmetricBandedMatrix one(1, 0);
  one.add(0, 0, 4.0);
  EXPECT_DOUBLE_EQ(solve_spd(one, Vector::Constant(1, 1.0))[0], 0.25);
  SymmetricBandedMatrix id(5, 2);
  for (int i = 0; i < 5; ++i) id.add(i, i, 1.0);
  const Vector b = Vector::LinSpaced(5, 1, 5);
  EXPECT_LE(max_abs(solve_spd(id, b) - b), 0.0);
}

TEST(Banded, RandomSpdMatchesDenseSolve) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 50, kd = 4;
  SymmetricBandedMatrix a(n, kd);
  for (int i = 0; i < n; ++i) {
    a.add(i, i, 2.0 * kd + 2.0);
    for (int j = std::max(0, i - kd); j < i; ++j) a.add(i, j, u(rng));
  }
  const Vector b = random_vector(n, rng);
  const Vector x = solve_spd(a, b);
  const Eigen::MatrixXd d = a.to_dense();
  const Vector ref = d.llt().solve(b);
  EXPECT_LE(max_abs(x - ref), 1e-12);
  EXPECT_LE((d * x - b).norm(), 1e-12 * b.norm());
  EXPECT_LE(max_abs(a.multiply(x) - d * x), 1e-13);
}

TEST(Banded, NonPositivePivotThrows) {
  SymmetricBandedMatrix a(2, 1);
  a.add(0, 0, 1.0);
  a.add(1, 0, 2.0);
  a.add(1, 1, 1.0);
  EXPECT_THROW(BandedCholesky{a}, NumericalError);
}

TEST(Qoi, BumpAgainstSineMatchesAdaptiveQuadrature) {
  auto psi = [](double x) {
    return (x > 0.2 && x < 0.6) ? 1e4 * std::pow(x - 0.2, 2) * std::pow(x - 0.6, 2) : 0.0;
  };
  const FeSpace space = uniform_space(80, 2);
  const NodalField u = interpolant(space, [](double x) { return std::sin(pi * x); });
  const double ref = integrate([&](double x) { return psi(x) * std::sin(pi * x); }, 0.2, 0.6);
  EXPECT_NEAR(qoi_eval(psi, u), ref, 1e-8);
  EXPECT_EQ(qoi_eval([](double) { return 0.0; }, u), 0.0);
}

TEST(Qoi, HatAgainstItselfIsMassDiagonal) {
  const FeSpace space = uniform_space(6, 1);
  const auto ops = assemble_operators(space);
  Vector e = Vector::Zero(space.dof_count());
  e[2] = 1.0;
  const NodalField hat(space, e);
  EXPECT_NEAR(qoi_eval(hat, hat), ops.mass.matrix(2, 2), 1e-15);
  EXPECT_NEAR(l2_inner(hat, hat), ops.mass.matrix(2, 2), 1e-15);
}
