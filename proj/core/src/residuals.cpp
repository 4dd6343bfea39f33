#include "stpa/residuals.hpp"

#include <numeric>

#include "stpa/error.hpp"

namespace stpa {

std::vector<double> residual_steps(const Trajectory& traj, const Trajectory& weight,
                                   const SpaceTimeFunction& source, int time_points) {
  const FeSpace& wspace = weight.space();
  const FeSpace& uspace = traj.space();
  if (!wspace.same_mesh(uspace)) throw NumericalError("residual: weight on a different mesh");
  const SparseMatrix mass = assemble_mixed(wspace, uspace, FormKind::mass);
  const SparseMatrix stiff = assemble_mixed(wspace, uspace, FormKind::stiffness);
  const SparseMatrix mass_in = assemble_mixed(wspace, traj.incoming().space, FormKind::mass);
  const auto& rule = gauss_legendre(time_points);
  const TimeGrid& grid = traj.grid();
  const TimeGrid& wgrid = weight.grid();
  const bool continuous = traj.time_degree() > 0;

  std::vector<double> out(grid.step_count(), 0.0);
  for (int n = 1; n <= grid.step_count(); ++n) {
    const double t0 = grid.node(n - 1);
    const double dt = grid.step(n);
    const int m = wgrid.step_covering(t0, grid.node(n));
    if (m < 0) throw NumericalError("residual: weight grid does not cover the trajectory step");
    const double wdt = wgrid.step(m);
    auto weight_tau = [&](double t) { return (t - wgrid.node(m - 1)) / wdt; };

    double r = 0.0;
    for (std::size_t g = 0; g < rule.size(); ++g) {
      const double t = t0 + rule.points[g] * dt;
      const Vector phi = weight.value(m, weight_tau(t));
      const Vector u = traj.value(n, rule.points[g]);
      double integrand = -phi.dot(stiff * u);
      if (source) integrand += phi.dot(assemble_load(wspace, t, source));
      if (continuous) integrand -= phi.dot(mass * traj.time_derivative(n, rule.points[g]));
      r += rule.weights[g] * dt * integrand;
    }
    if (!continuous || n == 1) {
      const Vector phi0 = weight.value(m, weight_tau(t0));
      const Vector right = traj.value(n, 0.0);
      const double left = n == 1 ? phi0.dot(mass_in * traj.incoming().coefficients)
                                 : phi0.dot(mass * traj.value(n - 1, 1.0));
      r -= phi0.dot(mass * right) - left;
    }
    out[n - 1] = r;
  }
  return out;
}

std::vector<double> residual_cg(const Trajectory& traj, const Trajectory& weight,
                                const SpaceTimeFunction& source) {
  if (traj.time_degree() < 1) throw NumericalError("residual_cg: trajectory is not cG");
  return residual_steps(traj, weight, source);
}

double sum(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace stpa
