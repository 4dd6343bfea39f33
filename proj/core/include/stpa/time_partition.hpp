#pragma once

#include <span>
#include <vector>

namespace stpa {

/// Strictly increasing time nodes t_0 < ... < t_N.
class TimeGrid {
 public:
  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> nodes);
  static TimeGrid uniform(double start, double end, int steps);

  int step_count() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  double start() const noexcept { return nodes_.front(); }
  double end() const noexcept { return nodes_.back(); }
  double node(int n) const { return nodes_[n]; }
  /// Length of step n (1-based, matching I_n = [t_{n-1}, t_n]).
  double step(int n) const { return nodes_[n] - nodes_[n - 1]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  /// Index of the node equal to t (within 1e-12 relative), or -1.
  int find_node(double t) const noexcept;

  /// Step n (1-based) whose closed interval contains t; at interior nodes the
  /// earlier step. Throws outside [start, end] beyond round-off.
  int step_containing(double t) const;

  /// Step n containing the whole interval [a, b], or -1 if none does.
  int step_covering(double a, double b) const noexcept;

  /// Grid restricted to nodes [first, last].
  TimeGrid slice(int first, int last) const;

 private:
  std::vector<double> nodes_;
};

/// Temporal subdomains [T_{p-1}, T_p] with their coarse and fine grids.
class TimePartition {
 public:
  /// Uniform partition: P_t equal subdomains, N̂_t / P_t coarse steps each and
  /// r fine steps per coarse step. N̂_t must be divisible by P_t.
  static TimePartition uniform(double final_time, int coarse_steps, int refinement,
                               int subdomains);

  int subdomain_count() const noexcept { return static_cast<int>(sync_.size()) - 1; }
  double final_time() const noexcept { return sync_.back(); }
  /// T_p, p = 0..P_t.
  double sync_time(int p) const { return sync_[p]; }
  std::span<const double> sync_times() const noexcept { return sync_; }

  /// Grids of subdomain p (1-based).
  const TimeGrid& coarse_grid(int p) const { return coarse_[p - 1]; }
  const TimeGrid& fine_grid(int p) const { return fine_[p - 1]; }

  /// Concatenation of the subdomain coarse / fine grids over [0, T].
  const TimeGrid& global_coarse_grid() const noexcept { return global_coarse_; }
  const TimeGrid& global_fine_grid() const noexcept { return global_fine_; }

  int total_coarse_steps() const noexcept { return global_coarse_.step_count(); }
  int total_fine_steps() const noexcept { return global_fine_.step_count(); }
  int refinement() const noexcept { return refinement_; }

 private:
  std::vector<double> sync_;
  std::vector<TimeGrid> coarse_;
  std::vector<TimeGrid> fine_;
  TimeGrid global_coarse_;
  TimeGrid global_fine_;
  int refinement_ = 1;
};

}  // namespace stpa
