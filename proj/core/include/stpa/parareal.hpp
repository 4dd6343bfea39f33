#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stpa/time_partition.hpp"
#include "stpa/trajectory.hpp"

namespace stpa {

/// Solver closure on temporal subdomain p (1-based) from the given initial data.
using Propagator = std::function<Trajectory(int p, const NodalField& initial)>;

/// One Parareal iteration. Vectors are indexed by p - 1.
struct PararealIterate {
  std::vector<Trajectory> coarse;
  std::vector<Trajectory> fine;
  /// C_p = U^p(T_p) - Ĝ^p(T_p), in the fine space.
  std::vector<NodalField> corrections;
};

/// All iterations of the variational Parareal algorithm.
///
/// The coarse initial data on subdomain p >= 2 is Û^{p-1}(T_{p-1}) + C_{p-1}^{k-1};
/// the fine solve starts from exactly that value. Both trajectories keep it as
/// their incoming value.
class PararealState {
 public:
  PararealState(TimePartition partition, NodalField initial);

  const TimePartition& partition() const noexcept { return partition_; }
  /// Û_0.
  const NodalField& initial() const noexcept { return initial_; }
  int iteration_count() const noexcept { return static_cast<int>(iterations_.size()); }

  /// Iteration k_t (1-based).
  const PararealIterate& iterate(int k) const;
  const Trajectory& coarse(int k, int p) const { return iterate(k).coarse.at(p - 1); }
  const Trajectory& fine(int k, int p) const { return iterate(k).fine.at(p - 1); }
  /// C_p^k; zero for k = 0, in the space of the fine solutions.
  NodalField correction(int k, int p) const;

  /// Fine solution at T after the last iteration.
  NodalField solution() const;

  void push(PararealIterate iterate) { iterations_.push_back(std::move(iterate)); }

 private:
  TimePartition partition_;
  NodalField initial_;
  std::vector<PararealIterate> iterations_;
};

struct PararealOptions {
  /// Fine solves within an iteration run on up to this many threads
  /// (0: hardware concurrency); results do not depend on the count.
  int threads = 1;
  /// When set, the corrected initial data Û^{p-1}(T_{p-1}) + C_{p-1} is nodally
  /// interpolated into this space before it is handed to both solvers.
  /// Without it the hand-off is exact and Parareal terminates at k_t = P_t.
  std::optional<FeSpace> handoff_space;
};

/// Variational Parareal.
PararealState vpar(const TimePartition& partition, int iterations, const NodalField& initial,
                   const Propagator& fine, const Propagator& coarse,
                   const PararealOptions& options = {});

/// Synchronization values of the standard Parareal algorithm, indexed [k-1][p-1].
struct StandardParareal {
  std::vector<std::vector<NodalField>> coarse;       // Ũ_p^{(k)}
  std::vector<std::vector<NodalField>> fine;         // Ū_p^{(k)}
  std::vector<std::vector<NodalField>> corrections;  // C_p^k
};

StandardParareal par_standard(const TimePartition& partition, int iterations,
                              const NodalField& initial, const Propagator& fine,
                              const Propagator& coarse, const PararealOptions& options = {});

}  // namespace stpa
