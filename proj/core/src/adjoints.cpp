#include "stpa/adjoints.hpp"

#include <optional>

#include "stpa/error.hpp"
#include "stpa/parallel.hpp"
#include "stpa/propagators.hpp"

namespace stpa {

SpaceTimeAdjoint solve_coarse_adjoint(const TimePartition& partition, const FeSpace& space,
                                      const SpatialFunction& psi, int time_degree) {
  const NodalField terminal = project_field(psi, space, ProjectionMode::nodal_interpolation);
  const ContinuousGalerkin solver(space, time_degree, nullptr);
  return {AdjointKind::coarse, 0,
          solver.propagate_backward(partition.global_coarse_grid(), terminal)};
}

std::vector<SpaceTimeAdjoint> solve_fine_adjoints(const TimePartition& partition,
                                                  const SpaceTimeAdjoint& coarse, int threads) {
  const int P = partition.subdomain_count();
  const ContinuousGalerkin solver(coarse.space(), coarse.trajectory.time_degree(), nullptr);
  std::vector<std::optional<SpaceTimeAdjoint>> out(P);
  parallel_for(P, threads, [&](int i) {
    const int p = i + 1;
    const NodalField terminal = coarse.field_at(partition.sync_time(p));
    out[i] = SpaceTimeAdjoint{AdjointKind::fine, p,
                              solver.propagate_backward(partition.fine_grid(p), terminal)};
  });
  std::vector<SpaceTimeAdjoint> result;
  result.reserve(P);
  for (auto& a : out) result.push_back(std::move(*a));
  return result;
}

std::vector<SpaceTimeAdjoint> solve_auxiliary_adjoints(const TimePartition& partition,
                                                       const SpaceTimeAdjoint& coarse,
                                                       const std::vector<SpaceTimeAdjoint>& fine,
                                                       int threads) {
  const int P = partition.subdomain_count();
  if (static_cast<int>(fine.size()) != P) {
    throw NumericalError("auxiliary adjoints need one fine adjoint per temporal subdomain");
  }
  if (P < 2) return {};
  const ContinuousGalerkin solver(coarse.space(), coarse.trajectory.time_degree(), nullptr);
  const TimeGrid& global = partition.global_coarse_grid();
  std::vector<std::optional<SpaceTimeAdjoint>> out(P - 1);
  parallel_for(P - 1, threads, [&](int i) {
    const int p = i + 2;
    const double t = partition.sync_time(p - 1);
    const int last = global.find_node(t);
    if (last < 1) throw NumericalError("synchronization time is not a coarse grid node");
    Vector jump = fine[p - 1].trajectory.nodes().front() - coarse.value_at(t);
    const NodalField terminal(coarse.space(), std::move(jump));
    out[i] = SpaceTimeAdjoint{AdjointKind::auxiliary, p,
                              solver.propagate_backward(global.slice(0, last), terminal)};
  });
  std::vector<SpaceTimeAdjoint> result;
  result.reserve(P - 1);
  for (auto& a : out) result.push_back(std::move(*a));
  return result;
}

SpatialAdjointSolver::SpatialAdjointSolver(FeSpace space, const OperatorPair& ops,
                                           const OverlapDecomposition& dd, double dt)
    : space_(std::move(space)), dd_(dd), dt_(dt), mass_(ops.mass.matrix),
      system_(ops.mass.matrix.combined(1.0, ops.stiffness.matrix, dt)), global_(system_) {
  if (!(ops.mass.space == space_)) throw NumericalError("spatial adjoint operators in wrong space");
  for (const auto& range : dd_.subdomains) {
    dofs_.push_back(subdomain_dofs(space_, range));
    const auto& d = dofs_.back();
    local_.emplace_back(system_.principal_block(d.interior_first, d.interior_count));
  }
}

Vector SpatialAdjointSolver::recursion_rhs(const Vector& mass_psi, const Vector& accumulated,
                                           int i) const {
  const auto& d = dofs_[i];
  const Vector coupled = system_.multiply(accumulated);
  return dd_.tau * (mass_psi.segment(d.interior_first, d.interior_count) -
                    coupled.segment(d.interior_first, d.interior_count));
}

SpatialAdjointSet SpatialAdjointSolver::solve(const NodalField& psi, int sweeps) const {
  if (sweeps < 1) throw ConfigError("spatial adjoints need at least one Schwarz sweep");
  if (!(psi.space == space_)) throw NumericalError("spatial adjoint data in wrong space");
  const int n = space_.dof_count();
  const int P = dd_.subdomain_count;
  const Vector mass_psi = mass_.multiply(psi.coefficients);
  SpatialAdjointSet set;
  set.phi = global_.solve(mass_psi);
  set.chi.assign(sweeps, std::vector<Vector>(P, Vector::Zero(n)));
  Vector accumulated = Vector::Zero(n);
  for (int k = sweeps; k >= 1; --k) {
    for (int i = 0; i < P; ++i) {
      const auto& d = dofs_[i];
      set.chi[k - 1][i].segment(d.interior_first, d.interior_count) =
          local_[i].solve(recursion_rhs(mass_psi, accumulated, i));
    }
    for (int i = 0; i < P; ++i) accumulated += set.chi[k - 1][i];
  }
  return set;
}

double SpatialAdjointSolver::recursion_residual(const NodalField& psi,
                                                const SpatialAdjointSet& set) const {
  const int n = space_.dof_count();
  const Vector mass_psi = mass_.multiply(psi.coefficients);
  double worst = (system_.multiply(set.phi) - mass_psi).cwiseAbs().maxCoeff();
  Vector accumulated = Vector::Zero(n);
  for (int k = static_cast<int>(set.chi.size()); k >= 1; --k) {
    for (int i = 0; i < dd_.subdomain_count; ++i) {
      const auto& d = dofs_[i];
      const Vector lhs = system_.multiply(set.chi[k - 1][i]);
      const Vector r = lhs.segment(d.interior_first, d.interior_count) -
                       recursion_rhs(mass_psi, accumulated, i);
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    for (const auto& c : set.chi[k - 1]) accumulated += c;
  }
  return worst;
}

SpatialAdjointSet solve_spatial_adjoints(const FeSpace& space, const OverlapDecomposition& dd,
                                         const NodalField& psi, int sweeps, double dt) {
  return SpatialAdjointSolver(space, assemble_operators(space), dd, dt).solve(psi, sweeps);
}

}  // namespace stpa
