#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stpa/adjoints.hpp"
#include "stpa/parareal.hpp"
#include "stpa/schwarz.hpp"

namespace stpa {

enum class BreakdownMode { tpa, stpa, coarse };

std::string_view mode_name(BreakdownMode mode);

/// Named error components. `estimated` is the sum of the components in their
/// stored order and is never recomputed.
struct ErrorBreakdown {
  BreakdownMode mode = BreakdownMode::tpa;
  std::vector<std::pair<std::string, double>> components;
  double estimated = 0.0;
  double true_error = 0.0;
  std::optional<double> gamma;

  /// Throws ConfigError for an unknown name.
  double component(std::string_view name) const;
  bool has(std::string_view name) const noexcept;
};

/// Estimated over true error; empty when the true error is zero.
std::optional<double> effectivity(double estimated, double true_error);

/// Data the estimator needs about the continuous problem.
struct EstimatorProblem {
  SpaceTimeFunction source;
  SpatialFunction initial;
  SpatialFunction psi;
  double true_qoi = 0.0;
};

/// Coarse, fine and auxiliary adjoints for one partition.
struct TpaAdjoints {
  SpaceTimeAdjoint coarse;
  std::vector<SpaceTimeAdjoint> fine;
  std::vector<SpaceTimeAdjoint> auxiliary;
};

TpaAdjoints solve_tpa_adjoints(const TimePartition& partition, const FeSpace& adjoint_space,
                               const SpatialFunction& psi, int time_degree = 3, int threads = 1);

/// Error components of the fine Parareal solution after iteration k:
/// D (fine residuals and initial error), K (fine jumps at T_{p-1}),
/// C (coarse jumps against the adjoint jump) and A (auxiliary-weighted coarse terms).
ErrorBreakdown tpa_breakdown(const PararealState& state, int k, const TpaAdjoints& adjoints,
                             const EstimatorProblem& problem, int threads = 1);

/// Split of one Schwarz-solved step into iteration (E^K) and subdomain
/// discretization (E^N) parts. `total` = l(Phi) - B(U^{K_s}, Phi).
struct DdSplit {
  double iteration = 0.0;
  double discretization = 0.0;
  double total = 0.0;
};

/// `load` is l^n tested with the adjoint space basis; `system` is
/// M + dt A with adjoint-space rows and forward-space columns.
DdSplit dd_split(const SchwarzSweepRecord& record, const SpatialAdjointSet& adjoints,
                 const Vector& load, const SparseMatrix& system);

/// Breakdown for Parareal with Schwarz fine solves: D_t, D_s, D_k, K, C, A.
/// Fine trajectories must carry their sweep records.
ErrorBreakdown stpa_breakdown(const PararealState& state, int k, const TpaAdjoints& adjoints,
                              const OverlapDecomposition& decomposition,
                              const EstimatorProblem& problem, int threads = 1);

/// Error of the coarse solution Û^{P_t,k}(T): coarse residuals, correction
/// pairings at T_p and the initial error.
ErrorBreakdown coarse_error_estimate(const PararealState& state, int k,
                                     const SpaceTimeAdjoint& coarse_adjoint,
                                     const EstimatorProblem& problem);

}  // namespace stpa
