#include "stpa/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace stpa {
namespace {

QuadratureRule build_gauss(int n) {
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map from [-1, 1] to [0, 1]; store in increasing order.
    rule.points[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

std::array<QuadratureRule, kMaxGaussPoints + 1> build_all() {
  std::array<QuadratureRule, kMaxGaussPoints + 1> rules;
  for (int n = 1; n <= kMaxGaussPoints; ++n) rules[n] = build_gauss(n);
  return rules;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static const auto rules = build_all();
  if (n < 1 || n > kMaxGaussPoints) {
    throw std::invalid_argument("gauss_legendre: unsupported point count " + std::to_string(n));
  }
  return rules[n];
}

const QuadratureRule& gauss_legendre_exact(int polynomial_degree) {
  const int n = polynomial_degree < 1 ? 1 : (polynomial_degree + 2) / 2;
  return gauss_legendre(n);
}

LagrangeBasis::LagrangeBasis(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("LagrangeBasis: negative degree");
  nodes_.resize(degree + 1);
  if (degree == 0) {
    nodes_[0] = 0.0;
    return;
  }
  for (int j = 0; j <= degree; ++j) nodes_[j] = static_cast<double>(j) / degree;
}

void LagrangeBasis::values(double xi, std::span<double> out) const {
  for (int j = 0; j <= degree_; ++j) {
    double v = 1.0;
    for (int m = 0; m <= degree_; ++m) {
      if (m != j) v *= (xi - nodes_[m]) / (nodes_[j] - nodes_[m]);
    }
    out[j] = v;
  }
}

void LagrangeBasis::derivatives(double xi, std::span<double> out) const {
  for (int j = 0; j <= degree_; ++j) {
    double sum = 0.0;
    for (int k = 0; k <= degree_; ++k) {
      if (k == j) continue;
      double prod = 1.0 / (nodes_[j] - nodes_[k]);
      for (int m = 0; m <= degree_; ++m) {
        if (m != j && m != k) prod *= (xi - nodes_[m]) / (nodes_[j] - nodes_[m]);
      }
      sum += prod;
    }
    out[j] = sum;
  }
}

double shifted_legendre(int k, double x) {
  const double s = 2.0 * x - 1.0;
  if (k == 0) return 1.0;
  double p0 = 1.0;
  double p1 = s;
  for (int m = 2; m <= k; ++m) {
    const double p2 = ((2.0 * m - 1.0) * s * p1 - (m - 1.0) * p0) / m;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace stpa
