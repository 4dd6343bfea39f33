#pragma once

#include <memory>
#include <vector>

#include "stpa/assembly.hpp"
#include "stpa/schwarz.hpp"
#include "stpa/trajectory.hpp"

namespace stpa {

/// Starting iterate of the Schwarz solve at each step.
enum class SchwarzGuess { zero, previous_step };

/// Implicit Euler in time, continuous Lagrange elements in space:
/// (M + dt A) U_n = M U_{n-1} + dt F(t_n).
///
/// The first step pairs the incoming value with the solve space through the
/// mixed mass matrix, i.e. an L2 projection of the initial data.
class ImplicitEuler {
 public:
  ImplicitEuler(FeSpace space, SpaceTimeFunction source);

  Trajectory propagate(const TimeGrid& grid, const NodalField& initial) const;

  /// Same scheme with every linear system solved by `sweeps` additive Schwarz
  /// iterations. The sweep records are kept on the trajectory.
  Trajectory propagate(const TimeGrid& grid, const NodalField& initial,
                       const OverlapDecomposition& decomposition, int sweeps,
                       SchwarzGuess guess = SchwarzGuess::zero) const;

  const FeSpace& space() const noexcept { return space_; }
  const OperatorPair& operators() const noexcept { return *ops_; }

 private:
  FeSpace space_;
  SpaceTimeFunction source_;
  std::shared_ptr<const OperatorPair> ops_;
};

/// Block system of one cG(q) slab: trial functions of degree q in time, test
/// functions the shifted Legendre polynomials of degree < q.
class CgSlabSystem {
 public:
  CgSlabSystem(const OperatorPair& ops, int time_degree, double dt);

  /// Node values at tau = 1/q .. 1 given the value at tau = 0 and the load
  /// moments dt * int_0^1 m_i(tau) F(t0 + tau dt) dtau (empty for zero load).
  std::vector<Vector> solve(const Vector& start, const std::vector<Vector>& load_moments) const;

  double dt() const noexcept { return dt_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double dt_;
};

/// Continuous Galerkin cG(q) propagator.
class ContinuousGalerkin {
 public:
  ContinuousGalerkin(FeSpace space, int time_degree, SpaceTimeFunction source);

  /// Initial data outside the space is L2-projected; the trajectory keeps the
  /// unprojected value as its incoming value.
  Trajectory propagate(const TimeGrid& grid, const NodalField& initial) const;

  /// Homogeneous backward solve of M dphi/dt = A phi with phi(t_N) = terminal.
  Trajectory propagate_backward(const TimeGrid& grid, const NodalField& terminal) const;

  int time_degree() const noexcept { return time_degree_; }
  const FeSpace& space() const noexcept { return space_; }

 private:
  FeSpace space_;
  int time_degree_;
  SpaceTimeFunction source_;
  std::shared_ptr<const OperatorPair> ops_;
};

Trajectory propagate_be(const FeSpace& space, const TimeGrid& grid, const NodalField& initial,
                        const SpaceTimeFunction& source);

Trajectory propagate_cg(const FeSpace& space, const TimeGrid& grid, int time_degree,
                        const NodalField& initial, const SpaceTimeFunction& source);

/// Re-solves the dG(0) equations with right-endpoint load quadrature through an
/// independent dense assembly and returns the largest coefficient deviation from
/// the given implicit Euler trajectory.
double dg0_equivalence_check(const Trajectory& implicit_euler, const SpaceTimeFunction& source);

}  // namespace stpa
