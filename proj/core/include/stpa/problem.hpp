#pragma once

#include "stpa/assembly.hpp"

namespace stpa {

/// Polynomial bump psi(x) = scale (x - x_lo)^2 (x - x_hi)^2 on (x_lo, x_hi).
struct QoiWindow {
  double x_lo = 0.2;
  double x_hi = 0.6;
  double scale = 10000.0;
};

/// Heat equation u_t - u_xx = f on (0, 1) x (0, T] with exact solution
/// u = cos(nu pi t) sin(mu pi x).
struct ManufacturedProblem {
  double nu = 4.0;
  double mu = 1.0;
  double final_time = 2.0;
  QoiWindow window;
  SpaceTimeFunction source;
  SpaceTimeFunction exact;
  SpatialFunction initial;
  SpatialFunction psi;
};

ManufacturedProblem build_manufactured(double nu, double mu, double final_time,
                                       QoiWindow window = {});

/// (psi, u(T)) by adaptive Gauss-Kronrod quadrature.
double true_qoi(const ManufacturedProblem& problem);

}  // namespace stpa
