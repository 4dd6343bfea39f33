#pragma once

#include <Eigen/Core>
#include <vector>

#include "stpa/fe_space.hpp"

namespace stpa {

/// Symmetric matrix stored as its lower band.
class SymmetricBandedMatrix {
 public:
  SymmetricBandedMatrix() = default;
  SymmetricBandedMatrix(int size, int half_bandwidth);

  int size() const noexcept { return n_; }
  int half_bandwidth() const noexcept { return kd_; }

  /// Entry (i, j); zero outside the band.
  double operator()(int i, int j) const noexcept;

  /// Adds v to (i, j) and, implicitly, (j, i). |i - j| must be within the band.
  void add(int i, int j, double v);

  Vector multiply(const Vector& x) const;

  /// alpha * this + beta * other; both must have the same size.
  SymmetricBandedMatrix combined(double alpha, const SymmetricBandedMatrix& other,
                                 double beta) const;

  /// Contiguous principal block starting at `first`.
  SymmetricBandedMatrix principal_block(int first, int count) const;

  Eigen::MatrixXd to_dense() const;

 private:
  double& lower(int i, int j) { return band_[static_cast<std::size_t>(j) * (kd_ + 1) + (i - j)]; }
  double lower(int i, int j) const { return band_[static_cast<std::size_t>(j) * (kd_ + 1) + (i - j)]; }

  int n_ = 0;
  int kd_ = 0;
  std::vector<double> band_;
};

/// Banded Cholesky factor L with A = L L^T. Throws NumericalError on a
/// non-positive pivot.
class BandedCholesky {
 public:
  BandedCholesky() = default;
  explicit BandedCholesky(const SymmetricBandedMatrix& a);

  int size() const noexcept { return n_; }
  Vector solve(const Vector& rhs) const;

 private:
  int n_ = 0;
  int kd_ = 0;
  std::vector<double> factor_;  // column-major lower band, same layout as the matrix
};

Vector solve_spd(const SymmetricBandedMatrix& a, const Vector& rhs);

}  // namespace stpa
