#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stpa/assembly.hpp"
#include "stpa/error.hpp"
#include "stpa/parareal.hpp"
#include "stpa/problem.hpp"
#include "stpa/propagators.hpp"
#include "stpa/selftest.hpp"

using namespace stpa;
using namespace stpa::test;

namespace {

struct Rig {
  Rig(const Rig&) = delete;
  ManufacturedProblem prob = build_manufactured(4.0, 1.0, 2.0);
  TimePartition part;
  FeSpace coarse_space, fine_space;
  NodalField u0;
  Propagator coarse, fine;

  Rig(int nhat, int r, int P, int ns = 8)
      : part(TimePartition::uniform(2.0, nhat, r, P)),
        coarse_space(uniform_space(ns, 1)),
        fine_space(uniform_space(ns, 2)),
        u0(interpolant(coarse_space, prob.initial)) {
    coarse = [this](int p, const NodalField& ic) {
      return propagate_be(coarse_space, part.coarse_grid(p), ic, prob.source);
    };
    fine = [this](int p, const NodalField& ic) {
      return propagate_be(fine_space, part.fine_grid(p), ic, prob.source);
    };
  }
};

}  // namespace

TEST(Parareal, SingleSubdomainEqualsSerialFineSolve) {
  Rig s(6, 3, 1);
  const auto state = vpar(s.part, 1, s.u0, s.fine, s.coarse);
  const auto serial = propagate_be(s.fine_space, s.part.global_fine_grid(), s.u0, s.prob.source);
  EXPECT_LE(max_abs(state.solution().coefficients - serial.final_value().coefficients), 1e-12);
}

TEST(Parareal, ExactAfterPtIterations) {
  for (int P : {2, 3, 4}) {
    Rig s(12, 2, P);
    const auto state = vpar(s.part, P, s.u0, s.fine, s.coarse);
    const auto serial = propagate_be(s.fine_space, s.part.global_fine_grid(), s.u0, s.prob.source);
    for (int p = 1; p <= P; ++p) {
      const Vector ref = serial.value_at(s.part.sync_time(p));
      EXPECT_LE(max_abs(state.fine(P, p).final_value().coefficients - ref), 1e-10) << P << " " << p;
    }
  }
}

TEST(Parareal, ConvergedPrefixIsExactAndCorrectionsStagnate) {
  Rig s(12, 2, 4);
  const auto state = vpar(s.part, 3, s.u0, s.fine, s.coarse);
  const auto serial = propagate_be(s.fine_space, s.part.global_fine_grid(), s.u0, s.prob.source);
  for (int k = 1; k <= 3; ++k)
    for (int p = 1; p <= k; ++p)
      EXPECT_LE(max_abs(state.fine(k, p).final_value().coefficients - serial.value_at(s.part.sync_time(p))), 1e-10);
  for (int k = 2; k <= 3; ++k)
    for (int p = 1; p <= k - 1; ++p)
      EXPECT_LE(max_abs(state.correction(k, p).coefficients - state.correction(k - 1, p).coefficients), 1e-10);
}

TEST(Parareal, MatchesStandardFormulation) {
  Rig s(12, 3, 4);
  const int K = 3;
  const auto state = vpar(s.part, K, s.u0, s.fine, s.coarse);
  const auto standard = par_standard(s.part, K, s.u0, s.fine, s.coarse);
  for (int k = 1; k <= K; ++k)
    for (int p = 1; p <= 4; ++p) {
      const auto& bar = standard.fine[k - 1][p - 1];
      EXPECT_LE(max_abs(bar.coefficients - state.fine(k, p).final_value().coefficients), 1e-12);
      const NodalField tilde = add_fields(state.coarse(k, p).final_value(), state.correction(k - 1, p));
      const NodalField diff = add_fields(standard.coarse[k - 1][p - 1], tilde, -1.0);
      EXPECT_LE(max_abs(diff.coefficients), 1e-12);
    }
}

TEST(Parareal, RandomizedEquivalenceSuite) {
  const auto r = check_parareal_equivalence(20, 99);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Parareal, ZeroProblemStaysZero) {
  Rig s(6, 2, 3);
  s.prob.source = [](double, double) { return 0.0; };
  const auto state = vpar(s.part, 2, NodalField::zero(s.coarse_space), s.fine, s.coarse);
  for (int p = 1; p <= 3; ++p) {
    EXPECT_EQ(max_abs(state.fine(2, p).final_value().coefficients), 0.0);
    EXPECT_EQ(max_abs(state.correction(2, p).coefficients), 0.0);
  }
}

TEST(Parareal, ThreadCountDoesNotChangeResults) {
  Rig s(20, 4, 5);
  PararealOptions serial_opts, threaded_opts;
  threaded_opts.threads = 4;
  const auto a = vpar(s.part, 3, s.u0, s.fine, s.coarse, serial_opts);
  const auto b = vpar(s.part, 3, s.u0, s.fine, s.coarse, threaded_opts);
  for (int k = 1; k <= 3; ++k)
    for (int p = 1; p <= 5; ++p)
      EXPECT_TRUE(a.fine(k, p).final_value().coefficients == b.fine(k, p).final_value().coefficients);
}

TEST(Parareal, CoarseHandoffInterpolatesIntoCoarseSpace) {
  Rig s(12, 2, 3);
  PararealOptions opts;
  opts.handoff_space = s.coarse_space;
  const auto state = vpar(s.part, 2, s.u0, s.fine, s.coarse, opts);
  for (int p = 2; p <= 3; ++p) {
    const auto& in = state.fine(2, p).incoming();
    EXPECT_EQ(in.space, s.coarse_space);
    const NodalField raw = add_fields(state.coarse(2, p - 1).final_value(), state.correction(1, p - 1));
    const NodalField expect = project_field(raw, s.coarse_space, ProjectionMode::nodal_interpolation);
    EXPECT_LE(max_abs(in.coefficients - expect.coefficients), 1e-14);
  }
}

TEST(Parareal, FirstIterationCorrectionsAreZeroBeforeStart) {
  Rig s(6, 2, 3);
  const auto state = vpar(s.part, 1, s.u0, s.fine, s.coarse);
  for (int p = 1; p <= 3; ++p) EXPECT_EQ(max_abs(state.correction(0, p).coefficients), 0.0);
  EXPECT_THROW(state.iterate(2), std::exception);
}

TEST(Parareal, PropagatorFailureIsReportedWithContext) {
  Rig s(6, 2, 3);
  Propagator bad = [&s](int p, const NodalField& ic) -> Trajectory {
    if (p == 2) throw NumericalError("boom");
    return s.fine(p, ic);
  };
  try {
    vpar(s.part, 1, s.u0, bad, s.coarse);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::numerical);
    const std::string what = e.what();
    EXPECT_NE(what.find("boom"), std::string::npos);
    EXPECT_NE(what.find("subdomain 2"), std::string::npos) << what;
  }
}
