#pragma once

#include <memory>
#include <span>
#include <vector>

namespace stpa {

/// Interval mesh of a 1D domain [a, b].
class SpatialMesh {
 public:
  /// Vertices must be strictly increasing with at least two entries.
  explicit SpatialMesh(std::vector<double> vertices);

  static SpatialMesh uniform(double a, double b, int elements);
  static std::shared_ptr<const SpatialMesh> make_uniform(double a, double b, int elements);

  int element_count() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  double left() const noexcept { return vertices_.front(); }
  double right() const noexcept { return vertices_.back(); }
  double vertex(int i) const { return vertices_[i]; }
  double element_left(int e) const { return vertices_[e]; }
  double element_length(int e) const { return vertices_[e + 1] - vertices_[e]; }
  std::span<const double> vertices() const noexcept { return vertices_; }

  /// Element containing x; points on an interior vertex belong to the element on the right.
  int find_element(double x) const;

  bool operator==(const SpatialMesh& other) const noexcept { return vertices_ == other.vertices_; }

 private:
  std::vector<double> vertices_;
};

}  // namespace stpa
