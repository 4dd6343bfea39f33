#include "stpa/mesh.hpp"

#include <algorithm>
#include <string>

#include "stpa/error.hpp"

namespace stpa {

SpatialMesh::SpatialMesh(std::vector<double> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw ConfigError("SpatialMesh: need at least one element");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (!(vertices_[i] > vertices_[i - 1])) {
      throw ConfigError("SpatialMesh: degenerate or unsorted element " + std::to_string(i - 1));
    }
  }
}

SpatialMesh SpatialMesh::uniform(double a, double b, int elements) {
  if (elements < 1) throw ConfigError("SpatialMesh: element count must be positive");
  if (!(b > a)) throw ConfigError("SpatialMesh: empty domain");
  std::vector<double> v(elements + 1);
  const double h = (b - a) / elements;
  for (int i = 0; i <= elements; ++i) v[i] = a + i * h;
  v.back() = b;
  return SpatialMesh(std::move(v));
}

std::shared_ptr<const SpatialMesh> SpatialMesh::make_uniform(double a, double b, int elements) {
  return std::make_shared<const SpatialMesh>(uniform(a, b, elements));
}

int SpatialMesh::find_element(double x) const {
  auto it = std::upper_bound(vertices_.begin(), vertices_.end(), x);
  int e = static_cast<int>(it - vertices_.begin()) - 1;
  return std::clamp(e, 0, element_count() - 1);
}

}  // namespace stpa
