#include "stpa/estimator.hpp"

#include <cmath>

#include "stpa/error.hpp"
#include "stpa/parallel.hpp"
#include "stpa/residuals.hpp"

namespace stpa {
namespace {

ErrorBreakdown finish(BreakdownMode mode, std::vector<std::pair<std::string, double>> parts,
                      double true_error) {
  ErrorBreakdown b;
  b.mode = mode;
  b.components = std::move(parts);
  for (const auto& [name, value] : b.components) b.estimated += value;
  b.true_error = true_error;
  b.gamma = effectivity(b.estimated, true_error);
  return b;
}

// (phi, u0 - Û_0) with the 10-point rule for the analytic part.
double initial_error_term(const NodalField& phi, const SpatialFunction& u0,
                          const NodalField& initial) {
  return qoi_eval(u0, phi) - l2_inner(phi, initial);
}

double pairing_difference(const NodalField& phi, const NodalField& a, const NodalField& b) {
  return l2_inner(phi, a) - l2_inner(phi, b);
}

void check_iteration(const PararealState& state, int k) {
  if (k < 1 || k > state.iteration_count()) {
    throw ConfigError("estimator: iteration " + std::to_string(k) + " was not computed");
  }
}

void check_adjoints(const PararealState& state, const TpaAdjoints& adj) {
  const int P = state.partition().subdomain_count();
  if (static_cast<int>(adj.fine.size()) != P) {
    throw ConfigError("estimator: fine adjoints missing");
  }
  if (static_cast<int>(adj.auxiliary.size()) != P - 1) {
    throw ConfigError("estimator: auxiliary adjoints missing");
  }
}

// K, C and A terms; shared by both fine-solver variants.
std::vector<std::pair<std::string, double>> synchronization_terms(const PararealState& state,
                                                                  int k, const TpaAdjoints& adj,
                                                                  const EstimatorProblem& problem,
                                                                  int threads) {
  const TimePartition& part = state.partition();
  const int P = part.subdomain_count();
  double kterm = 0.0;
  double cterm = 0.0;
  for (int p = 2; p <= P; ++p) {
    const double t = part.sync_time(p - 1);
    const NodalField phi_hat = adj.coarse.field_at(t);
    kterm += pairing_difference(phi_hat, state.fine(k, p - 1).final_value(),
                                state.fine(k, p).incoming());
    const NodalField jump = adj.auxiliary[p - 2].terminal();
    cterm += pairing_difference(jump, state.coarse(k, p - 1).final_value(),
                                state.coarse(k, p).incoming());
  }
  std::vector<double> aparts(std::max(P - 1, 0), 0.0);
  parallel_for(P - 1, threads, [&](int i) {
    const int p = i + 2;
    const SpaceTimeAdjoint& aux = adj.auxiliary[i];
    double a = 0.0;
    for (int j = 2; j <= p - 1; ++j) {
      a += pairing_difference(aux.field_at(part.sync_time(j - 1)),
                              state.coarse(k, j - 1).final_value(), state.coarse(k, j).incoming());
    }
    for (int j = 1; j <= p - 1; ++j) {
      a += sum(residual_coarse(state.coarse(k, j), aux.trajectory, problem.source));
    }
    a += initial_error_term(aux.field_at(0.0), problem.initial, state.initial());
    aparts[i] = a;
  });
  double aterm = 0.0;
  for (double a : aparts) aterm += a;
  return {{"K", kterm}, {"C", cterm}, {"A", aterm}};
}

double true_fine_error(const PararealState& state, int k, const EstimatorProblem& problem) {
  const int P = state.partition().subdomain_count();
  return problem.true_qoi - qoi_eval(problem.psi, state.fine(k, P).final_value());
}

}  // namespace

std::string_view mode_name(BreakdownMode mode) {
  switch (mode) {
    case BreakdownMode::tpa:
      return "tpa";
    case BreakdownMode::stpa:
      return "stpa";
    case BreakdownMode::coarse:
      return "coarse";
  }
  return "unknown";
}

double ErrorBreakdown::component(std::string_view name) const {
  for (const auto& [n, v] : components) {
    if (n == name) return v;
  }
  throw ConfigError("no error component named " + std::string(name));
}

bool ErrorBreakdown::has(std::string_view name) const noexcept {
  for (const auto& c : components) {
    if (c.first == name) return true;
  }
  return false;
}

std::optional<double> effectivity(double estimated, double true_error) {
  if (true_error == 0.0) return std::nullopt;
  return estimated / true_error;
}

TpaAdjoints solve_tpa_adjoints(const TimePartition& partition, const FeSpace& adjoint_space,
                               const SpatialFunction& psi, int time_degree, int threads) {
  TpaAdjoints adj{solve_coarse_adjoint(partition, adjoint_space, psi, time_degree), {}, {}};
  adj.fine = solve_fine_adjoints(partition, adj.coarse, threads);
  adj.auxiliary = solve_auxiliary_adjoints(partition, adj.coarse, adj.fine, threads);
  return adj;
}

ErrorBreakdown tpa_breakdown(const PararealState& state, int k, const TpaAdjoints& adj,
                             const EstimatorProblem& problem, int threads) {
  check_iteration(state, k);
  check_adjoints(state, adj);
  const int P = state.partition().subdomain_count();
  std::vector<double> dparts(P, 0.0);
  parallel_for(P, threads, [&](int i) {
    dparts[i] = sum(residual_fine(state.fine(k, i + 1), adj.fine[i].trajectory, problem.source));
  });
  double d = 0.0;
  for (double v : dparts) d += v;
  d += initial_error_term(adj.fine[0].field_at(0.0), problem.initial, state.initial());

  std::vector<std::pair<std::string, double>> parts{{"D", d}};
  for (auto& t : synchronization_terms(state, k, adj, problem, threads)) parts.push_back(t);
  return finish(BreakdownMode::tpa, std::move(parts), true_fine_error(state, k, problem));
}

DdSplit dd_split(const SchwarzSweepRecord& record, const SpatialAdjointSet& adjoints,
                 const Vector& load, const SparseMatrix& system) {
  if (record.sweeps() == 0 || record.iterates.empty()) {
    throw ConfigError("dd_split: missing Schwarz sweep record");
  }
  if (static_cast<int>(adjoints.chi.size()) != record.sweeps()) {
    throw ConfigError("dd_split: sweep count of adjoints and record differ");
  }
  DdSplit s;
  for (int k = 1; k <= record.sweeps(); ++k) {
    const auto& chis = adjoints.chi[k - 1];
    const auto& locals = record.local[k - 1];
    for (std::size_t i = 0; i < chis.size(); ++i) {
      s.discretization += chis[i].dot(load) - chis[i].dot(system * locals[i]);
    }
  }
  s.total = adjoints.phi.dot(load) - adjoints.phi.dot(system * record.iterates.back());
  s.iteration = s.total - s.discretization;
  return s;
}

ErrorBreakdown stpa_breakdown(const PararealState& state, int k, const TpaAdjoints& adj,
                              const OverlapDecomposition& dd, const EstimatorProblem& problem,
                              int threads) {
  check_iteration(state, k);
  check_adjoints(state, adj);
  const int P = state.partition().subdomain_count();
  const FeSpace& aspace = adj.coarse.space();
  const OperatorPair aops = assemble_operators(aspace);

  struct Parts {
    double dt = 0.0;
    double ds = 0.0;
    double dk = 0.0;
  };
  std::vector<Parts> parts(P);
  parallel_for(P, threads, [&](int i) {
    const Trajectory& u = state.fine(k, i + 1);
    const Trajectory& phi = adj.fine[i].trajectory;
    if (u.time_degree() != 0) throw ConfigError("stpa_breakdown: fine solver must be implicit Euler");
    if (static_cast<int>(u.sweeps().size()) != u.step_count()) {
      throw ConfigError("stpa_breakdown: fine trajectory has no Schwarz sweep records");
    }
    const FeSpace& uspace = u.space();
    const SparseMatrix mass = assemble_mixed(aspace, uspace, FormKind::mass);
    const SparseMatrix stiff = assemble_mixed(aspace, uspace, FormKind::stiffness);
    const SparseMatrix mass_in = assemble_mixed(aspace, u.incoming().space, FormKind::mass);
    const std::vector<double> r = residual_fine(u, phi, problem.source);
    const TimeGrid& grid = u.grid();
    std::optional<SpatialAdjointSolver> solver;
    Parts acc;
    for (int n = 1; n <= grid.step_count(); ++n) {
      const double dt = grid.step(n);
      if (!solver || std::abs(solver->dt() - dt) > 1e-12 * dt) solver.emplace(aspace, aops, dd, dt);
      const SchwarzSweepRecord& record = u.sweeps()[n - 1];
      const NodalField psi(aspace, phi.value_at(grid.node(n)));
      const SpatialAdjointSet set = solver->solve(psi, record.sweeps());
      Vector load = n == 1 ? Vector(mass_in * u.incoming().coefficients)
                           : Vector(mass * u.value(n - 1, 1.0));
      if (problem.source) load += dt * assemble_load(aspace, grid.node(n), problem.source);
      const SparseMatrix system = mass + dt * stiff;
      const DdSplit split = dd_split(record, set, load, system);
      acc.dt += r[n - 1] - split.iteration - split.discretization;
      acc.ds += split.discretization;
      acc.dk += split.iteration;
    }
    parts[i] = acc;
  });
  Parts total;
  for (const auto& p : parts) {
    total.dt += p.dt;
    total.ds += p.ds;
    total.dk += p.dk;
  }
  total.dt += initial_error_term(adj.fine[0].field_at(0.0), problem.initial, state.initial());

  std::vector<std::pair<std::string, double>> out{
      {"D_t", total.dt}, {"D_s", total.ds}, {"D_k", total.dk}};
  for (auto& t : synchronization_terms(state, k, adj, problem, threads)) out.push_back(t);
  return finish(BreakdownMode::stpa, std::move(out), true_fine_error(state, k, problem));
}

ErrorBreakdown coarse_error_estimate(const PararealState& state, int k,
                                     const SpaceTimeAdjoint& coarse_adjoint,
                                     const EstimatorProblem& problem) {
  check_iteration(state, k);
  const TimePartition& part = state.partition();
  const int P = part.subdomain_count();
  double residual = 0.0;
  for (int p = 1; p <= P; ++p) {
    residual += sum(residual_coarse(state.coarse(k, p), coarse_adjoint.trajectory, problem.source));
  }
  double correction = 0.0;
  for (int p = 1; p <= P - 1; ++p) {
    correction -= l2_inner(coarse_adjoint.field_at(part.sync_time(p)), state.correction(k - 1, p));
  }
  const double initial =
      initial_error_term(coarse_adjoint.field_at(0.0), problem.initial, state.initial());
  const double true_error =
      problem.true_qoi - qoi_eval(problem.psi, state.coarse(k, P).final_value());
  return finish(BreakdownMode::coarse,
                {{"residual", residual}, {"correction", correction}, {"initial", initial}},
                true_error);
}

}  // namespace stpa
