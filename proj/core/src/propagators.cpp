#include "stpa/propagators.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <cmath>
#include <optional>

#include "stpa/error.hpp"

namespace stpa {
namespace {

bool same_step(double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(a); }

// M_target,source * source
Vector mass_pairing(const FeSpace& target, const OperatorPair& ops, const NodalField& field) {
  if (field.space == target) return ops.mass.matrix.multiply(field.coefficients);
  return assemble_mixed(target, field.space, FormKind::mass) * field.coefficients;
}

Vector to_space(const NodalField& field, const FeSpace& target) {
  if (field.space == target) return field.coefficients;
  return project_field(field, target, ProjectionMode::l2_projection).coefficients;
}

}  // namespace

ImplicitEuler::ImplicitEuler(FeSpace space, SpaceTimeFunction source)
    : space_(std::move(space)), source_(std::move(source)),
      ops_(std::make_shared<const OperatorPair>(assemble_operators(space_))) {}

Trajectory ImplicitEuler::propagate(const TimeGrid& grid, const NodalField& initial) const {
  const auto& m = ops_->mass.matrix;
  const auto& a = ops_->stiffness.matrix;
  std::vector<Vector> values;
  values.reserve(grid.step_count());
  std::optional<BandedCholesky> factor;
  double factored_dt = 0.0;
  for (int n = 1; n <= grid.step_count(); ++n) {
    const double dt = grid.step(n);
    if (!factor || !same_step(dt, factored_dt)) {
      factor.emplace(m.combined(1.0, a, dt));
      factored_dt = dt;
    }
    Vector rhs = n == 1 ? mass_pairing(space_, *ops_, initial) : m.multiply(values.back());
    if (source_) rhs += dt * assemble_load(space_, grid.node(n), source_);
    values.push_back(factor->solve(rhs));
  }
  return Trajectory(space_, grid, 0, initial, std::move(values));
}

Trajectory ImplicitEuler::propagate(const TimeGrid& grid, const NodalField& initial,
                                    const OverlapDecomposition& decomposition, int sweeps,
                                    SchwarzGuess guess) const {
  const auto& m = ops_->mass.matrix;
  const auto& a = ops_->stiffness.matrix;
  std::vector<Vector> values;
  std::vector<SchwarzSweepRecord> records;
  values.reserve(grid.step_count());
  records.reserve(grid.step_count());
  std::optional<AdditiveSchwarz> schwarz;
  double factored_dt = 0.0;
  Vector previous = to_space(initial, space_);
  for (int n = 1; n <= grid.step_count(); ++n) {
    const double dt = grid.step(n);
    if (!schwarz || !same_step(dt, factored_dt)) {
      schwarz.emplace(space_, m.combined(1.0, a, dt), decomposition);
      factored_dt = dt;
    }
    Vector rhs = n == 1 ? mass_pairing(space_, *ops_, initial) : m.multiply(previous);
    if (source_) rhs += dt * assemble_load(space_, grid.node(n), source_);
    auto result = guess == SchwarzGuess::previous_step
                      ? schwarz->solve(rhs, previous, sweeps)
                      : schwarz->solve(rhs, Vector::Zero(previous.size()), sweeps);
    previous = result.solution;
    values.push_back(std::move(result.solution));
    records.push_back(std::move(result.record));
  }
  Trajectory traj(space_, grid, 0, initial, std::move(values));
  traj.set_sweeps(std::move(records));
  return traj;
}

struct CgSlabSystem::Impl {
  int q = 1;
  Eigen::SparseLU<SparseMatrix> lu;
  // Start-value coupling per test function: D_i0 M + dt W_i0 A.
  std::vector<SymmetricBandedMatrix> start_coupling;
};

CgSlabSystem::CgSlabSystem(const OperatorPair& ops, int q, double dt) : dt_(dt) {
  if (q < 1) throw ConfigError("cG time degree must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->q = q;
  const LagrangeBasis basis(q);
  const auto& rule = gauss_legendre_exact(2 * q);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(q, q + 1);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(q, q + 1);
  std::vector<double> lv(q + 1);
  std::vector<double> ld(q + 1);
  for (std::size_t g = 0; g < rule.size(); ++g) {
    basis.values(rule.points[g], lv);
    basis.derivatives(rule.points[g], ld);
    for (int i = 0; i < q; ++i) {
      const double mi = shifted_legendre(i, rule.points[g]) * rule.weights[g];
      for (int j = 0; j <= q; ++j) {
        d(i, j) += ld[j] * mi;
        w(i, j) += lv[j] * mi;
      }
    }
  }
  const auto& m = ops.mass.matrix;
  const auto& a = ops.stiffness.matrix;
  const int n = m.size();
  const int kd = std::max(m.half_bandwidth(), a.half_bandwidth());
  std::vector<Eigen::Triplet<double>> triplets;
  for (int i = 0; i < q; ++i) {
    for (int j = 1; j <= q; ++j) {
      for (int r = 0; r < n; ++r) {
        for (int c = std::max(0, r - kd); c <= std::min(n - 1, r + kd); ++c) {
          const double v = d(i, j) * m(r, c) + dt * w(i, j) * a(r, c);
          if (v != 0.0) triplets.emplace_back(i * n + r, (j - 1) * n + c, v);
        }
      }
    }
    impl->start_coupling.push_back(m.combined(d(i, 0), a, dt * w(i, 0)));
  }
  SparseMatrix block(q * n, q * n);
  block.setFromTriplets(triplets.begin(), triplets.end());
  impl->lu.compute(block);
  if (impl->lu.info() != Eigen::Success) throw NumericalError("cG slab system is singular");
  impl_ = std::move(impl);
}

std::vector<Vector> CgSlabSystem::solve(const Vector& start,
                                        const std::vector<Vector>& load_moments) const {
  const int q = impl_->q;
  const int n = static_cast<int>(start.size());
  Vector rhs(q * n);
  for (int i = 0; i < q; ++i) {
    Vector block = -impl_->start_coupling[i].multiply(start);
    if (!load_moments.empty()) block += load_moments[i];
    rhs.segment(i * n, n) = block;
  }
  const Vector x = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success) throw NumericalError("cG slab solve failed");
  std::vector<Vector> out;
  out.reserve(q);
  for (int j = 0; j < q; ++j) out.push_back(x.segment(j * n, n));
  return out;
}

ContinuousGalerkin::ContinuousGalerkin(FeSpace space, int time_degree, SpaceTimeFunction source)
    : space_(std::move(space)), time_degree_(time_degree), source_(std::move(source)),
      ops_(std::make_shared<const OperatorPair>(assemble_operators(space_))) {
  if (time_degree_ < 1) throw ConfigError("cG time degree must be >= 1");
}

Trajectory ContinuousGalerkin::propagate(const TimeGrid& grid, const NodalField& initial) const {
  const int q = time_degree_;
  std::vector<Vector> nodes;
  nodes.reserve(static_cast<std::size_t>(grid.step_count()) * q + 1);
  nodes.push_back(to_space(initial, space_));
  std::optional<CgSlabSystem> slab;
  const auto& rule = gauss_legendre_exact(2 * q + 3);
  for (int n = 1; n <= grid.step_count(); ++n) {
    const double dt = grid.step(n);
    if (!slab || !same_step(dt, slab->dt())) slab.emplace(*ops_, q, dt);
    std::vector<Vector> moments;
    if (source_) {
      moments.assign(q, Vector::Zero(space_.dof_count()));
      for (std::size_t g = 0; g < rule.size(); ++g) {
        const Vector load = assemble_load(space_, grid.node(n - 1) + rule.points[g] * dt, source_);
        for (int i = 0; i < q; ++i) {
          moments[i] += (dt * rule.weights[g] * shifted_legendre(i, rule.points[g])) * load;
        }
      }
    }
    auto next = slab->solve(nodes.back(), moments);
    for (auto& v : next) nodes.push_back(std::move(v));
  }
  return Trajectory(space_, grid, q, initial, std::move(nodes));
}

Trajectory ContinuousGalerkin::propagate_backward(const TimeGrid& grid,
                                                  const NodalField& terminal) const {
  const int q = time_degree_;
  const int steps = grid.step_count();
  std::vector<Vector> nodes(static_cast<std::size_t>(steps) * q + 1);
  nodes.back() = to_space(terminal, space_);
  std::optional<CgSlabSystem> slab;
  for (int n = steps; n >= 1; --n) {
    const double dt = grid.step(n);
    if (!slab || !same_step(dt, slab->dt())) slab.emplace(*ops_, q, dt);
    const std::size_t base = static_cast<std::size_t>(n - 1) * q;
    // In reversed time sigma = 1 - tau the node sigma = j/q is tau-node q - j.
    auto reversed = slab->solve(nodes[base + q], {});
    for (int j = 1; j <= q; ++j) nodes[base + q - j] = std::move(reversed[j - 1]);
  }
  NodalField start(space_, nodes.front());
  return Trajectory(space_, grid, q, std::move(start), std::move(nodes));
}

Trajectory propagate_be(const FeSpace& space, const TimeGrid& grid, const NodalField& initial,
                        const SpaceTimeFunction& source) {
  return ImplicitEuler(space, source).propagate(grid, initial);
}

Trajectory propagate_cg(const FeSpace& space, const TimeGrid& grid, int time_degree,
                        const NodalField& initial, const SpaceTimeFunction& source) {
  return ContinuousGalerkin(space, time_degree, source).propagate(grid, initial);
}

double dg0_equivalence_check(const Trajectory& traj, const SpaceTimeFunction& source) {
  if (traj.time_degree() != 0) throw NumericalError("dg0_equivalence_check: not a dG(0) trajectory");
  const FeSpace& space = traj.space();
  const Eigen::MatrixXd m = Eigen::MatrixXd(assemble_mixed(space, space, FormKind::mass));
  const Eigen::MatrixXd a = Eigen::MatrixXd(assemble_mixed(space, space, FormKind::stiffness));
  const Vector incoming_pairing =
      assemble_mixed(space, traj.incoming().space, FormKind::mass) * traj.incoming().coefficients;
  double deviation = 0.0;
  Vector previous;
  for (int n = 1; n <= traj.step_count(); ++n) {
    const double dt = traj.grid().step(n);
    // ([U]_{n-1}, v) + dt a(U_n, v) = dt l(v)(t_n), v constant in time.
    Vector rhs = n == 1 ? incoming_pairing : Vector(m * previous);
    rhs += dt * assemble_load(space, traj.grid().node(n), source);
    const Eigen::MatrixXd lhs = m + dt * a;
    const Vector u = lhs.ldlt().solve(rhs);
    deviation = std::max(deviation, (u - traj.value(n, 1.0)).cwiseAbs().maxCoeff());
    previous = u;
  }
  return deviation;
}

}  // namespace stpa
