#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stpa/assembly.hpp"
#include "stpa/error.hpp"
#include "stpa/schwarz.hpp"
#include "stpa/selftest.hpp"

using namespace stpa;
using namespace stpa::test;

namespace {

struct StepSystem {
  FeSpace space;
  SymmetricBandedMatrix system;
  Vector rhs;
  Vector direct;

  StepSystem(int elements, int degree, double dt, unsigned seed = 1) : space(uniform_space(elements, degree)) {
    const auto ops = assemble_operators(space);
    system = ops.mass.matrix.combined(1.0, ops.stiffness.matrix, dt);
    std::mt19937 rng(seed);
    rhs = random_vector(space.dof_count(), rng);
    direct = Eigen::MatrixXd(system.to_dense()).llt().solve(rhs);
  }
};

}  // namespace

TEST(Decompose, TwoSubdomainsTwentyElements) {
  const auto mesh = SpatialMesh::uniform(0, 1, 20);
  const auto dd = decompose_domain(mesh, 2, 0.2);
  EXPECT_EQ(dd.extension, 2);
  ASSERT_EQ(dd.subdomains.size(), 2u);
  EXPECT_EQ(dd.subdomains[0], (ElementRange{0, 12}));
  EXPECT_EQ(dd.subdomains[1], (ElementRange{8, 20}));
  ASSERT_EQ(dd.overlaps.size(), 1u);
  EXPECT_EQ(dd.overlaps[0].elements, (ElementRange{8, 12}));
  EXPECT_DOUBLE_EQ(dd.tau, 0.4);
}

TEST(Decompose, FourSubdomainsFortyElements) {
  const auto dd = decompose_domain(SpatialMesh::uniform(0, 1, 40), 4, 0.1);
  EXPECT_EQ(dd.extension, 1);
  EXPECT_EQ(dd.subdomains[0], (ElementRange{0, 11}));
  EXPECT_EQ(dd.subdomains[1], (ElementRange{9, 21}));
  EXPECT_EQ(dd.subdomains[3], (ElementRange{29, 40}));
}

TEST(Decompose, SingleSubdomainIsWholeDomain) {
  const auto dd = decompose_domain(SpatialMesh::uniform(0, 1, 10), 1, 0.3);
  ASSERT_EQ(dd.subdomains.size(), 1u);
  EXPECT_EQ(dd.subdomains[0], (ElementRange{0, 10}));
  EXPECT_TRUE(dd.overlaps.empty());
}

TEST(Decompose, RejectsInvalidInput) {
  const auto mesh = SpatialMesh::uniform(0, 1, 10);
  EXPECT_THROW(decompose_domain(mesh, 0, 0.2), ConfigError);
  EXPECT_THROW(decompose_domain(mesh, 11, 0.2), ConfigError);
  EXPECT_THROW(decompose_domain(mesh, 2, -0.1), ConfigError);
}

TEST(SubdomainDofs, InteriorAndTraces) {
  const FeSpace space = uniform_space(20, 2);
  const auto d0 = subdomain_dofs(space, {0, 12});
  EXPECT_EQ(d0.left_trace, -1);
  EXPECT_EQ(d0.interior_first, 0);
  EXPECT_EQ(d0.interior_count, 23);
  EXPECT_EQ(d0.right_trace, 23);
  const auto d1 = subdomain_dofs(space, {8, 20});
  EXPECT_EQ(d1.left_trace, 15);
  EXPECT_EQ(d1.interior_first, 16);
  EXPECT_EQ(d1.right_trace, -1);
}

TEST(Schwarz, SingleDomainFullBlendIsDirect) {
  StepSystem s(20, 2, 0.05);
  const auto dd = decompose_domain(s.space.mesh(), 1, 0.0, 1.0);
  const auto res = asdd_solve(s.space, s.system, s.rhs, dd, 1, Vector::Zero(s.space.dof_count()));
  EXPECT_LE(max_abs(res.solution - s.direct), 1e-12);
}

TEST(Schwarz, ConvergesGeometricallyToDirectSolve) {
  StepSystem s(20, 2, 0.05);
  const auto dd = decompose_domain(s.space.mesh(), 2, 0.2, 0.4);
  const auto res = asdd_solve(s.space, s.system, s.rhs, dd, 100, Vector::Zero(s.space.dof_count()));
  ASSERT_EQ(res.record.iterates.size(), 101u);
  std::vector<double> err;
  for (const auto& it : res.record.iterates) err.push_back(max_abs(it - s.direct));
  EXPECT_LE(err.back(), 1e-10);
  for (int k = 5; k + 5 < 101; k += 5) EXPECT_LT(err[k + 5], 0.5 * err[k]);
}

TEST(Schwarz, ExactSolutionIsFixedPoint) {
  StepSystem s(20, 1, 0.1);
  const auto dd = decompose_domain(s.space.mesh(), 4, 0.2);
  const auto res = asdd_solve(s.space, s.system, s.rhs, dd, 7, s.direct);
  EXPECT_LE(max_abs(res.solution - s.direct), 1e-12);
}

TEST(Schwarz, LocalSolveKeepsIterateOutsideSubdomain) {
  StepSystem s(20, 2, 0.1);
  const auto dd = decompose_domain(s.space.mesh(), 2, 0.2);
  AdditiveSchwarz solver(s.space, s.system, dd);
  std::mt19937 rng(2);
  const Vector iterate = random_vector(s.space.dof_count(), rng);
  for (int i = 0; i < 2; ++i) {
    const Vector local = solver.local_solve(i, s.rhs, iterate);
    const auto& l = solver.subdomain_layout()[i];
    for (int d = 0; d < s.space.dof_count(); ++d) {
      const bool interior = d >= l.interior_first && d < l.interior_first + l.interior_count;
      if (!interior) {
        EXPECT_EQ(local[d], iterate[d]) << i << " " << d;
      }
    }
    // Interior rows satisfy the global equations with the iterate as trace data.
    const Vector r = s.system.multiply(local) - s.rhs;
    for (int d = l.interior_first; d < l.interior_first + l.interior_count; ++d) EXPECT_NEAR(r[d], 0.0, 1e-12);
  }
}

TEST(Schwarz, RecordHoldsSweepLocals) {
  StepSystem s(20, 1, 0.1);
  const auto dd = decompose_domain(s.space.mesh(), 3, 0.1);
  AdditiveSchwarz solver(s.space, s.system, dd);
  const auto res = solver.solve(s.rhs, Vector::Zero(s.space.dof_count()), 3);
  ASSERT_EQ(res.record.sweeps(), 3);
  for (int k = 0; k < 3; ++k) {
    Vector blended = (1.0 - dd.tau * 3) * res.record.iterates[k];
    for (int i = 0; i < 3; ++i) {
      EXPECT_LE(max_abs(res.record.local[k][i] - solver.local_solve(i, s.rhs, res.record.iterates[k])), 1e-14);
      blended += dd.tau * res.record.local[k][i];
    }
    EXPECT_LE(max_abs(blended - res.record.iterates[k + 1]), 1e-13);
  }
}

TEST(Schwarz, SelftestSuite) {
  const auto r = check_schwarz_convergence();
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Schwarz, ContractionRateOnPardIterationsStep) {
  // About 0.77 per sweep at dt = 0.05: 1e-10 needs more than 50 sweeps.
  const double e50 = schwarz_error_after(50), e60 = schwarz_error_after(60);
  const double rate = std::pow(e60 / e50, 0.1);
  EXPECT_GT(rate, 0.6);
  EXPECT_LT(rate, 0.85);
  EXPECT_LE(schwarz_error_after(100), 1e-10);
}
