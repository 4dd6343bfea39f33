#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stpa/config.hpp"
#include "stpa/estimator.hpp"

namespace stpa {

/// Result of one experiment.
struct RunRecord {
  ExperimentConfig config;
  /// Swept parameter and its value, when produced by a sweep.
  std::optional<std::pair<std::string, std::string>> parameter;
  ErrorBreakdown breakdown;
  double true_qoi = 0.0;
  double computed_qoi = 0.0;
  double wall_seconds = 0.0;

  /// Column names of a table row: est_err, gamma, then the components.
  std::vector<std::string> columns() const;
  /// Values in the order of columns(); gamma is NaN when undefined.
  std::vector<double> row() const;
};

/// Runs Parareal (optionally with Schwarz fine solves) to iteration K_t on the
/// manufactured problem and estimates the error of the terminal QoI.
RunRecord run_experiment(const ExperimentConfig& config);

/// One record per value, with `param` set to each value in turn.
std::vector<RunRecord> run_sweep(const ExperimentConfig& base, const std::string& param,
                                 const std::vector<std::string>& values);

}  // namespace stpa
