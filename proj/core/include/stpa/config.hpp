#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace stpa {

enum class Integrator { be, cg };
enum class OutputFormat { csv, json };

/// One experiment. Keys follow the discretization symbols: Nhat_t is the
/// number of coarse time steps, r the fine/coarse refinement, qhat_s and q_s
/// the coarse and fine spatial degrees, and so on.
struct ExperimentConfig {
  // problem
  double nu = 4.0;
  double mu = 1.0;
  double T = 2.0;
  // quantity of interest
  double x_lo = 0.2;
  double x_hi = 0.6;
  double scale = 10000.0;
  // time
  int Nhat_t = 20;
  int r = 16;
  int P_t = 10;
  int K_t = 1;
  Integrator integrator = Integrator::be;
  int qhat_t = 1;
  int q_t = 1;
  // space
  int Nhat_s = 20;
  int qhat_s = 1;
  int q_s = 2;
  // additive Schwarz fine solves
  bool schwarz = false;
  int P_s = 2;
  int K_s = 2;
  double beta = 0.2;
  double tau = 0.4;
  /// "zero" or "previous": starting iterate of each Schwarz solve.
  std::string schwarz_guess = "zero";
  /// "coarse": corrected initial data is interpolated into the coarse space;
  /// "exact": handed over unchanged.
  std::string handoff = "coarse";
  // adjoints
  int adjoint_time_degree = 3;
  int adjoint_space_degree = 3;
  // output
  OutputFormat format = OutputFormat::csv;
  std::string path;
  int threads = 1;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  /// Assigns a key from its text form. Throws ConfigError on unknown keys or
  /// malformed values.
  void set(const std::string& key, const std::string& value);

  /// Text form of a key's current value.
  std::string get(const std::string& key) const;

  /// All keys with their current values in declaration order.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

const std::vector<std::string>& config_keys();

/// Flat YAML mapping of keys to scalars; missing keys keep their defaults.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text);

std::string to_string(Integrator integrator);
std::string to_string(OutputFormat format);

}  // namespace stpa
