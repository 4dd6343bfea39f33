#include "stpa/time_partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stpa/error.hpp"

namespace stpa {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ConfigError("TimeGrid: need at least one step");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) throw ConfigError("TimeGrid: nodes not strictly increasing");
  }
}

TimeGrid TimeGrid::uniform(double start, double end, int steps) {
  if (steps < 1) throw ConfigError("TimeGrid: step count must be positive");
  std::vector<double> nodes(steps + 1);
  const double dt = (end - start) / steps;
  for (int n = 0; n <= steps; ++n) nodes[n] = start + n * dt;
  nodes.back() = end;
  return TimeGrid(std::move(nodes));
}

int TimeGrid::find_node(double t) const noexcept {
  const double tol = 1e-12 * std::max(1.0, std::abs(end()));
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (std::abs(nodes_[i] - t) <= tol) return static_cast<int>(i);
  }
  return -1;
}

int TimeGrid::step_containing(double t) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(end()));
  if (t < start() - tol || t > end() + tol) {
    throw NumericalError("TimeGrid: time " + std::to_string(t) + " outside the grid");
  }
  const auto it = std::lower_bound(nodes_.begin() + 1, nodes_.end(), t - tol);
  if (it == nodes_.end()) return step_count();
  return static_cast<int>(it - nodes_.begin());
}

int TimeGrid::step_covering(double a, double b) const noexcept {
  const double tol = 1e-12 * std::max(1.0, std::abs(end()));
  const double mid = 0.5 * (a + b);
  if (mid < start() || mid > end()) return -1;
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), mid);
  const int n = it == nodes_.end() ? step_count() : static_cast<int>(it - nodes_.begin());
  if (n < 1) return -1;
  if (nodes_[n - 1] > a + tol || nodes_[n] < b - tol) return -1;
  return n;
}

TimeGrid TimeGrid::slice(int first, int last) const {
  return TimeGrid(std::vector<double>(nodes_.begin() + first, nodes_.begin() + last + 1));
}

TimePartition TimePartition::uniform(double final_time, int coarse_steps, int refinement,
                                     int subdomains) {
  if (!(final_time > 0.0)) throw ConfigError("TimePartition: T must be positive");
  if (subdomains < 1) throw ConfigError("TimePartition: P_t must be >= 1");
  if (coarse_steps < 1) throw ConfigError("TimePartition: Nhat_t must be >= 1");
  if (refinement < 1) throw ConfigError("TimePartition: r must be >= 1");
  if (coarse_steps % subdomains != 0) {
    throw ConfigError("TimePartition: Nhat_t = " + std::to_string(coarse_steps) +
                      " is not divisible by P_t = " + std::to_string(subdomains));
  }
  TimePartition part;
  part.refinement_ = refinement;
  const int per = coarse_steps / subdomains;
  part.sync_.resize(subdomains + 1);
  for (int p = 0; p <= subdomains; ++p) part.sync_[p] = final_time * p / subdomains;
  part.sync_.back() = final_time;

  std::vector<double> all_coarse{0.0};
  std::vector<double> all_fine{0.0};
  for (int p = 1; p <= subdomains; ++p) {
    part.coarse_.push_back(TimeGrid::uniform(part.sync_[p - 1], part.sync_[p], per));
    part.fine_.push_back(TimeGrid::uniform(part.sync_[p - 1], part.sync_[p], per * refinement));
    const auto c = part.coarse_.back().nodes();
    const auto f = part.fine_.back().nodes();
    all_coarse.insert(all_coarse.end(), c.begin() + 1, c.end());
    all_fine.insert(all_fine.end(), f.begin() + 1, f.end());
  }
  part.global_coarse_ = TimeGrid(std::move(all_coarse));
  part.global_fine_ = TimeGrid(std::move(all_fine));
  return part;
}

}  // namespace stpa
