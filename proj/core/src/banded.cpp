#include "stpa/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stpa/error.hpp"

namespace stpa {

SymmetricBandedMatrix::SymmetricBandedMatrix(int size, int half_bandwidth)
    : n_(size), kd_(half_bandwidth),
      band_(static_cast<std::size_t>(size) * (half_bandwidth + 1), 0.0) {
  if (size < 0 || half_bandwidth < 0) throw NumericalError("SymmetricBandedMatrix: bad shape");
}

double SymmetricBandedMatrix::operator()(int i, int j) const noexcept {
  if (i < j) std::swap(i, j);
  if (i - j > kd_) return 0.0;
  return lower(i, j);
}

void SymmetricBandedMatrix::add(int i, int j, double v) {
  if (i < j) std::swap(i, j);
  if (i - j > kd_) throw NumericalError("SymmetricBandedMatrix: entry outside band");
  lower(i, j) += v;
}

Vector SymmetricBandedMatrix::multiply(const Vector& x) const {
  Vector y = Vector::Zero(n_);
  for (int j = 0; j < n_; ++j) {
    y[j] += lower(j, j) * x[j];
    const int last = std::min(n_ - 1, j + kd_);
    for (int i = j + 1; i <= last; ++i) {
      const double a = lower(i, j);
      y[i] += a * x[j];
      y[j] += a * x[i];
    }
  }
  return y;
}

SymmetricBandedMatrix SymmetricBandedMatrix::combined(double alpha,
                                                      const SymmetricBandedMatrix& other,
                                                      double beta) const {
  if (other.n_ != n_) throw NumericalError("SymmetricBandedMatrix: size mismatch");
  SymmetricBandedMatrix out(n_, std::max(kd_, other.kd_));
  for (int j = 0; j < n_; ++j) {
    for (int i = j; i <= std::min(n_ - 1, j + out.kd_); ++i) {
      out.lower(i, j) = alpha * (*this)(i, j) + beta * other(i, j);
    }
  }
  return out;
}

SymmetricBandedMatrix SymmetricBandedMatrix::principal_block(int first, int count) const {
  if (first < 0 || count < 0 || first + count > n_) {
    throw NumericalError("SymmetricBandedMatrix: block out of range");
  }
  SymmetricBandedMatrix out(count, kd_);
  for (int j = 0; j < count; ++j) {
    for (int i = j; i <= std::min(count - 1, j + kd_); ++i) {
      out.lower(i, j) = lower(first + i, first + j);
    }
  }
  return out;
}

Eigen::MatrixXd SymmetricBandedMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
  for (int j = 0; j < n_; ++j) {
    for (int i = j; i <= std::min(n_ - 1, j + kd_); ++i) {
      d(i, j) = lower(i, j);
      d(j, i) = lower(i, j);
    }
  }
  return d;
}

BandedCholesky::BandedCholesky(const SymmetricBandedMatrix& a)
    : n_(a.size()), kd_(a.half_bandwidth()),
      factor_(static_cast<std::size_t>(a.size()) * (a.half_bandwidth() + 1), 0.0) {
  const auto at = [this](int i, int j) -> double& {
    return factor_[static_cast<std::size_t>(j) * (kd_ + 1) + (i - j)];
  };
  for (int j = 0; j < n_; ++j) {
    for (int i = j; i <= std::min(n_ - 1, j + kd_); ++i) at(i, j) = a(i, j);
  }
  for (int j = 0; j < n_; ++j) {
    const int k0 = std::max(0, j - kd_);
    double d = at(j, j);
    for (int k = k0; k < j; ++k) d -= at(j, k) * at(j, k);
    if (!(d > 0.0)) {
      throw NumericalError("BandedCholesky: non-positive pivot at row " + std::to_string(j));
    }
    const double ljj = std::sqrt(d);
    at(j, j) = ljj;
    const int last = std::min(n_ - 1, j + kd_);
    for (int i = j + 1; i <= last; ++i) {
      double s = at(i, j);
      for (int k = std::max(k0, i - kd_); k < j; ++k) s -= at(i, k) * at(j, k);
      at(i, j) = s / ljj;
    }
  }
}

Vector BandedCholesky::solve(const Vector& rhs) const {
  if (rhs.size() != n_) throw NumericalError("BandedCholesky: rhs size mismatch");
  const auto at = [this](int i, int j) {
    return factor_[static_cast<std::size_t>(j) * (kd_ + 1) + (i - j)];
  };
  Vector y = rhs;
  for (int i = 0; i < n_; ++i) {
    double s = y[i];
    for (int k = std::max(0, i - kd_); k < i; ++k) s -= at(i, k) * y[k];
    y[i] = s / at(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k <= std::min(n_ - 1, i + kd_); ++k) s -= at(k, i) * y[k];
    y[i] = s / at(i, i);
  }
  return y;
}

Vector solve_spd(const SymmetricBandedMatrix& a, const Vector& rhs) {
  return BandedCholesky(a).solve(rhs);
}

}  // namespace stpa
