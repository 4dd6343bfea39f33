#pragma once

#include <vector>

#include "stpa/fe_space.hpp"
#include "stpa/schwarz.hpp"
#include "stpa/time_partition.hpp"

namespace stpa {

/// Space-time finite element function on one time grid.
///
/// time_degree 0 (dG(0) / implicit Euler): one value per step, nodes[n-1] = U_n
/// on (t_{n-1}, t_n]. time_degree q >= 1 (cG(q)): the function is continuous and
/// nodes[(n-1)*q + j] is its value at t_{n-1} + (j/q) * dt_n.
///
/// `incoming` is the left limit at t_0, i.e. the initial data handed to the
/// solver. It may live in a different space than the trajectory itself.
class Trajectory {
 public:
  Trajectory(FeSpace space, TimeGrid grid, int time_degree, NodalField incoming,
             std::vector<Vector> nodes);

  const FeSpace& space() const noexcept { return space_; }
  const TimeGrid& grid() const noexcept { return grid_; }
  int time_degree() const noexcept { return time_degree_; }
  int step_count() const noexcept { return grid_.step_count(); }
  const NodalField& incoming() const noexcept { return incoming_; }
  const std::vector<Vector>& nodes() const noexcept { return nodes_; }

  /// Value on step n (1-based) at local coordinate tau in [0, 1].
  Vector value(int n, double tau) const;
  /// Time derivative on step n at tau.
  Vector time_derivative(int n, double tau) const;

  /// Value at physical time t; at interior nodes the left limit.
  Vector value_at(double t) const;

  /// Value at t_N (left limit).
  NodalField final_value() const;
  /// Left limit at t_n for n >= 1 (the value carried out of step n).
  Vector end_value(int n) const { return value(n, 1.0); }

  /// Coefficient vector of the time node value; only for time_degree >= 1.
  const Vector& node_value(int step, int local) const;

  /// Schwarz sweep records, one per step, when the trajectory was produced
  /// with domain-decomposed linear solves.
  const std::vector<SchwarzSweepRecord>& sweeps() const noexcept { return sweeps_; }
  void set_sweeps(std::vector<SchwarzSweepRecord> sweeps) { sweeps_ = std::move(sweeps); }

 private:
  FeSpace space_;
  TimeGrid grid_;
  int time_degree_;
  NodalField incoming_;
  std::vector<Vector> nodes_;
  std::vector<SchwarzSweepRecord> sweeps_;
  LagrangeBasis time_basis_;
};

}  // namespace stpa
