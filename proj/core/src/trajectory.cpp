#include "stpa/trajectory.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "stpa/error.hpp"

namespace stpa {

Trajectory::Trajectory(FeSpace space, TimeGrid grid, int time_degree, NodalField incoming,
                       std::vector<Vector> nodes)
    : space_(std::move(space)), grid_(std::move(grid)), time_degree_(time_degree),
      incoming_(std::move(incoming)), nodes_(std::move(nodes)), time_basis_(time_degree) {
  if (time_degree_ < 0) throw NumericalError("Trajectory: negative time degree");
  const std::size_t expected = time_degree_ == 0
                                   ? static_cast<std::size_t>(grid_.step_count())
                                   : static_cast<std::size_t>(grid_.step_count()) * time_degree_ + 1;
  if (nodes_.size() != expected) {
    throw NumericalError("Trajectory: expected " + std::to_string(expected) + " time nodes, got " +
                         std::to_string(nodes_.size()));
  }
  for (const auto& v : nodes_) {
    if (v.size() != space_.dof_count()) throw NumericalError("Trajectory: node size mismatch");
  }
  if (!incoming_.space.same_mesh(space_)) {
    throw NumericalError("Trajectory: incoming value on a different mesh");
  }
}

Vector Trajectory::value(int n, double tau) const {
  if (n < 1 || n > step_count()) throw NumericalError("Trajectory: step out of range");
  if (time_degree_ == 0) return nodes_[n - 1];
  std::array<double, 16> w{};
  time_basis_.values(tau, std::span<double>(w.data(), time_degree_ + 1));
  const std::size_t base = static_cast<std::size_t>(n - 1) * time_degree_;
  Vector out = w[0] * nodes_[base];
  for (int j = 1; j <= time_degree_; ++j) out += w[j] * nodes_[base + j];
  return out;
}

Vector Trajectory::time_derivative(int n, double tau) const {
  if (n < 1 || n > step_count()) throw NumericalError("Trajectory: step out of range");
  if (time_degree_ == 0) return Vector::Zero(space_.dof_count());
  std::array<double, 16> w{};
  time_basis_.derivatives(tau, std::span<double>(w.data(), time_degree_ + 1));
  const std::size_t base = static_cast<std::size_t>(n - 1) * time_degree_;
  const double inv_dt = 1.0 / grid_.step(n);
  Vector out = (w[0] * inv_dt) * nodes_[base];
  for (int j = 1; j <= time_degree_; ++j) out += (w[j] * inv_dt) * nodes_[base + j];
  return out;
}

Vector Trajectory::value_at(double t) const {
  const int n = grid_.step_containing(t);
  const double tau = std::clamp((t - grid_.node(n - 1)) / grid_.step(n), 0.0, 1.0);
  return value(n, tau);
}

NodalField Trajectory::final_value() const { return NodalField(space_, nodes_.back()); }

const Vector& Trajectory::node_value(int step, int local) const {
  if (time_degree_ == 0) throw NumericalError("Trajectory: node_value needs a cG trajectory");
  return nodes_[static_cast<std::size_t>(step - 1) * time_degree_ + local];
}

}  // namespace stpa
