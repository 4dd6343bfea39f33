#include "stpa/problem.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "stpa/error.hpp"

namespace stpa {

ManufacturedProblem build_manufactured(double nu, double mu, double final_time, QoiWindow w) {
  if (nu == 0.0 || mu == 0.0) throw ConfigError("manufactured problem needs nonzero nu and mu");
  if (!(final_time > 0.0)) throw ConfigError("final time must be positive");
  if (!(w.x_lo < w.x_hi)) throw ConfigError("QoI window needs x_lo < x_hi");
  constexpr double pi = std::numbers::pi;
  ManufacturedProblem p;
  p.nu = nu;
  p.mu = mu;
  p.final_time = final_time;
  p.window = w;
  p.source = [nu, mu](double x, double t) {
    return std::sin(mu * pi * x) *
           (mu * mu * pi * pi * std::cos(nu * pi * t) - nu * pi * std::sin(nu * pi * t));
  };
  p.exact = [nu, mu](double x, double t) { return std::cos(nu * pi * t) * std::sin(mu * pi * x); };
  p.initial = [mu](double x) { return std::sin(mu * pi * x); };
  p.psi = [w](double x) {
    if (x <= w.x_lo || x >= w.x_hi) return 0.0;
    const double a = x - w.x_lo;
    const double b = x - w.x_hi;
    return w.scale * a * a * b * b;
  };
  return p;
}

double true_qoi(const ManufacturedProblem& p) {
  using boost::math::quadrature::gauss_kronrod;
  const auto integrand = [&](double x) { return p.psi(x) * p.initial(x); };
  const double integral =
      gauss_kronrod<double, 31>::integrate(integrand, p.window.x_lo, p.window.x_hi, 15, 1e-14);
  return std::cos(p.nu * std::numbers::pi * p.final_time) * integral;
}

}  // namespace stpa
