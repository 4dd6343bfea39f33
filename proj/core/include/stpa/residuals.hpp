#pragma once

#include <vector>

#include "stpa/assembly.hpp"
#include "stpa/trajectory.hpp"

namespace stpa {

/// Gauss points per step for the time integrals of the residuals.
inline constexpr int kResidualTimePoints = 5;

/// Per-step adjoint-weighted residuals of a forward trajectory:
///
///   R_n = int_{I_n} l(phi) - (U_t, phi) - a(U, phi) dt - ([U]_{n-1}, phi(t_{n-1}^+)).
///
/// For implicit Euler (dG(0)) U_t = 0 and the jump enters at every step. For cG
/// the trajectory is continuous and only the first step carries the jump
/// between the incoming value and the projected start value. Every step of
/// `trajectory` must lie inside one step of `weight`.
std::vector<double> residual_steps(const Trajectory& trajectory, const Trajectory& weight,
                                   const SpaceTimeFunction& source,
                                   int time_points = kResidualTimePoints);

/// Fine and coarse variants differ only in the grid they run on.
inline std::vector<double> residual_fine(const Trajectory& trajectory, const Trajectory& weight,
                                         const SpaceTimeFunction& source) {
  return residual_steps(trajectory, weight, source);
}
inline std::vector<double> residual_coarse(const Trajectory& trajectory, const Trajectory& weight,
                                           const SpaceTimeFunction& source) {
  return residual_steps(trajectory, weight, source);
}
/// Requires a cG trajectory.
std::vector<double> residual_cg(const Trajectory& trajectory, const Trajectory& weight,
                                const SpaceTimeFunction& source);

double sum(const std::vector<double>& values);

}  // namespace stpa
