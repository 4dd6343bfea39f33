#include "stpa/experiment.hpp"

#include <chrono>
#include <limits>

#include "stpa/error.hpp"
#include "stpa/problem.hpp"
#include "stpa/propagators.hpp"

namespace stpa {
namespace {

// Rethrows with the stage prefixed, keeping the category.
template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.category(), std::string(name) + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> RunRecord::columns() const {
  std::vector<std::string> c{"est_err", "gamma"};
  for (const auto& [name, value] : breakdown.components) c.push_back(name);
  return c;
}

std::vector<double> RunRecord::row() const {
  std::vector<double> v{breakdown.estimated,
                        breakdown.gamma.value_or(std::numeric_limits<double>::quiet_NaN())};
  for (const auto& [name, value] : breakdown.components) v.push_back(value);
  return v;
}

RunRecord run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const ManufacturedProblem problem =
      build_manufactured(config.nu, config.mu, config.T, {config.x_lo, config.x_hi, config.scale});
  const TimePartition partition =
      TimePartition::uniform(config.T, config.Nhat_t, config.r, config.P_t);
  const auto mesh = SpatialMesh::make_uniform(0.0, 1.0, config.Nhat_s);
  const FeSpace coarse_space(mesh, config.qhat_s);
  const FeSpace fine_space(mesh, config.q_s);
  const FeSpace adjoint_space(mesh, config.adjoint_space_degree);

  std::optional<OverlapDecomposition> dd;
  if (config.schwarz) dd = decompose_domain(*mesh, config.P_s, config.beta, config.tau);
  const SchwarzGuess guess =
      config.schwarz_guess == "zero" ? SchwarzGuess::zero : SchwarzGuess::previous_step;

  Propagator coarse;
  Propagator fine;
  if (config.integrator == Integrator::be) {
    auto g = std::make_shared<const ImplicitEuler>(coarse_space, problem.source);
    auto f = std::make_shared<const ImplicitEuler>(fine_space, problem.source);
    coarse = [g, &partition](int p, const NodalField& ic) {
      return g->propagate(partition.coarse_grid(p), ic);
    };
    if (dd) {
      fine = [f, &partition, &dd, &config, guess](int p, const NodalField& ic) {
        return f->propagate(partition.fine_grid(p), ic, *dd, config.K_s, guess);
      };
    } else {
      fine = [f, &partition](int p, const NodalField& ic) {
        return f->propagate(partition.fine_grid(p), ic);
      };
    }
  } else {
    auto g = std::make_shared<const ContinuousGalerkin>(coarse_space, config.qhat_t, problem.source);
    auto f = std::make_shared<const ContinuousGalerkin>(fine_space, config.q_t, problem.source);
    coarse = [g, &partition](int p, const NodalField& ic) {
      return g->propagate(partition.coarse_grid(p), ic);
    };
    fine = [f, &partition](int p, const NodalField& ic) {
      return f->propagate(partition.fine_grid(p), ic);
    };
  }

  const NodalField initial =
      project_field(problem.initial, coarse_space, ProjectionMode::nodal_interpolation);
  PararealOptions options;
  options.threads = config.threads;
  if (config.handoff == "coarse") options.handoff_space = coarse_space;
  const PararealState state = stage("parareal", [&] {
    return vpar(partition, config.K_t, initial, fine, coarse, options);
  });

  const TpaAdjoints adjoints = stage("adjoints", [&] {
    return solve_tpa_adjoints(partition, adjoint_space, problem.psi, config.adjoint_time_degree,
                              config.threads);
  });

  RunRecord record;
  record.config = config;
  record.true_qoi = true_qoi(problem);
  const EstimatorProblem ep{problem.source, problem.initial, problem.psi, record.true_qoi};
  record.breakdown = stage("estimator", [&] {
    return dd ? stpa_breakdown(state, config.K_t, adjoints, *dd, ep, config.threads)
              : tpa_breakdown(state, config.K_t, adjoints, ep, config.threads);
  });
  record.computed_qoi = qoi_eval(problem.psi, state.solution());
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

std::vector<RunRecord> run_sweep(const ExperimentConfig& base, const std::string& param,
                                 const std::vector<std::string>& values) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<ExperimentConfig> configs;
  for (const auto& v : values) {
    ExperimentConfig c = base;
    c.set(param, v);
    c.validate();
    configs.push_back(std::move(c));
  }
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    RunRecord rec = run_experiment(configs[i]);
    rec.parameter = std::make_pair(param, values[i]);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace stpa
