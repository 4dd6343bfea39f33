#pragma once

#include <span>
#include <vector>

namespace stpa {

/// Quadrature rule on the reference interval [0, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }
};

/// n-point Gauss-Legendre rule on [0, 1], exact for polynomials of degree 2n-1.
/// Rules up to kMaxGaussPoints are built once and shared.
const QuadratureRule& gauss_legendre(int n);

/// Smallest Gauss rule integrating polynomials of the given degree exactly.
const QuadratureRule& gauss_legendre_exact(int polynomial_degree);

inline constexpr int kMaxGaussPoints = 24;

/// Lagrange basis of degree q on the equispaced nodes j/q of [0, 1]
/// (a single constant function for q = 0).
class LagrangeBasis {
 public:
  explicit LagrangeBasis(int degree);

  int degree() const noexcept { return degree_; }
  int size() const noexcept { return degree_ + 1; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }

  void values(double xi, std::span<double> out) const;
  void derivatives(double xi, std::span<double> out) const;

 private:
  int degree_;
  std::vector<double> nodes_;
};

/// Shifted Legendre polynomial P_k(2x - 1) on [0, 1].
double shifted_legendre(int k, double x);

}  // namespace stpa
