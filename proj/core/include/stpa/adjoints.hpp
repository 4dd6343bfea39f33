#pragma once

#include <vector>

#include "stpa/assembly.hpp"
#include "stpa/schwarz.hpp"
#include "stpa/time_partition.hpp"
#include "stpa/trajectory.hpp"

namespace stpa {

/// Polynomial degrees of every adjoint approximation.
struct AdjointSettings {
  int time_degree = 3;
  int space_degree = 3;
};

enum class AdjointKind { coarse, fine, auxiliary };

/// Backward-in-time cG adjoint solution of -phi_t - phi_xx = 0 on one grid.
struct SpaceTimeAdjoint {
  AdjointKind kind;
  /// Temporal subdomain p for fine and auxiliary adjoints; 0 for the coarse one.
  int subdomain;
  Trajectory trajectory;

  Vector value_at(double t) const { return trajectory.value_at(t); }
  NodalField field_at(double t) const { return NodalField(trajectory.space(), value_at(t)); }
  const FeSpace& space() const noexcept { return trajectory.space(); }
  NodalField terminal() const { return trajectory.final_value(); }
};

/// Coarse adjoint on the global coarse grid with phi(T) the interpolant of psi.
SpaceTimeAdjoint solve_coarse_adjoint(const TimePartition& partition, const FeSpace& space,
                                      const SpatialFunction& psi, int time_degree = 3);

/// Per-subdomain adjoints on the fine grids with phi^p(T_p) = phî(T_p).
/// Element p-1 belongs to subdomain p.
std::vector<SpaceTimeAdjoint> solve_fine_adjoints(const TimePartition& partition,
                                                  const SpaceTimeAdjoint& coarse,
                                                  int threads = 1);

/// Auxiliary adjoints for p = 2..P_t on the coarse grid of [0, T_{p-1}] with
/// terminal value phi^p(T_{p-1}) - phî(T_{p-1}). Element p-2 belongs to subdomain p.
std::vector<SpaceTimeAdjoint> solve_auxiliary_adjoints(const TimePartition& partition,
                                                       const SpaceTimeAdjoint& coarse,
                                                       const std::vector<SpaceTimeAdjoint>& fine,
                                                       int threads = 1);

/// Spatial adjoints of one implicit Euler step solved by additive Schwarz.
///
/// chi[k-1][i] is the subdomain adjoint of sweep k on subdomain i, extended by
/// zero to a global vector of the adjoint space.
struct SpatialAdjointSet {
  Vector phi;
  std::vector<std::vector<Vector>> chi;
};

/// Factorizations shared by all spatial adjoint solves with the same step size.
///
/// Global problem: B(v, Phi) = (psi, v) with B = M + dt A.
/// Subdomain recursion, k = K_s..1 and every subdomain i:
///   B_i(v, chi_i^k) = tau [ (psi, v) - B(v, sum_j sum_{l>k} chi_j^l) ]   for v in V_i,
/// which makes sum_{k,i} chi_i^k collect exactly the adjoint weights of the
/// K_s blended sweeps.
class SpatialAdjointSolver {
 public:
  SpatialAdjointSolver(FeSpace space, const OperatorPair& ops, const OverlapDecomposition& dd,
                       double dt);

  SpatialAdjointSet solve(const NodalField& psi, int sweeps) const;

  /// Largest residual of the subdomain recursion for a solved set (self-check).
  double recursion_residual(const NodalField& psi, const SpatialAdjointSet& set) const;

  const FeSpace& space() const noexcept { return space_; }
  const SymmetricBandedMatrix& system() const noexcept { return system_; }
  const SymmetricBandedMatrix& mass() const noexcept { return mass_; }
  double dt() const noexcept { return dt_; }

 private:
  Vector recursion_rhs(const Vector& mass_psi, const Vector& accumulated, int subdomain) const;

  FeSpace space_;
  OverlapDecomposition dd_;
  double dt_;
  SymmetricBandedMatrix mass_;
  SymmetricBandedMatrix system_;
  BandedCholesky global_;
  std::vector<SubdomainDofs> dofs_;
  std::vector<BandedCholesky> local_;
};

/// One-shot form for a single (p, n).
SpatialAdjointSet solve_spatial_adjoints(const FeSpace& space, const OverlapDecomposition& dd,
                                         const NodalField& psi, int sweeps, double dt);

}  // namespace stpa
