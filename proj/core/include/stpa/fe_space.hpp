#pragma once

#include <Eigen/Core>
#include <memory>
#include <span>

#include "stpa/mesh.hpp"
#include "stpa/quadrature.hpp"

namespace stpa {

using Vector = Eigen::VectorXd;

/// Continuous Lagrange space of degree q on a 1D mesh with homogeneous
/// Dirichlet conditions at both ends.
///
/// Nodes are numbered globally left to right, element e owning nodes
/// e*q .. e*q + q. The two boundary nodes carry no dof; node k maps to dof k-1.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const SpatialMesh> mesh, int degree);

  int degree() const noexcept { return degree_; }
  int dof_count() const noexcept { return degree_ * mesh_->element_count() - 1; }
  int node_count() const noexcept { return degree_ * mesh_->element_count() + 1; }

  const SpatialMesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const SpatialMesh>& mesh_ptr() const noexcept { return mesh_; }
  const LagrangeBasis& basis() const noexcept { return *basis_; }

  /// Global dof of element-local node j, or -1 on the Dirichlet boundary.
  int element_dof(int element, int local) const noexcept {
    return node_dof(element * degree_ + local);
  }
  int node_dof(int node) const noexcept {
    return (node == 0 || node == node_count() - 1) ? -1 : node - 1;
  }
  double node_position(int node) const;

  bool same_mesh(const FeSpace& other) const noexcept {
    return mesh_ == other.mesh_ || *mesh_ == *other.mesh_;
  }
  bool operator==(const FeSpace& other) const noexcept {
    return degree_ == other.degree_ && same_mesh(other);
  }

 private:
  std::shared_ptr<const SpatialMesh> mesh_;
  int degree_;
  std::shared_ptr<const LagrangeBasis> basis_;
};

/// Coefficients of a finite element function in a given space.
struct NodalField {
  FeSpace space;
  Vector coefficients;

  NodalField(FeSpace s, Vector c);

  static NodalField zero(const FeSpace& space);

  double operator()(double x) const;
};

/// Evaluates the function with the given dof coefficients at x.
double evaluate(const FeSpace& space, const Vector& coefficients, double x);

/// Re-expresses a field in a space of equal or higher degree on the same mesh
/// by nodal interpolation (exact for nested Lagrange spaces).
NodalField lift(const NodalField& field, const FeSpace& target);

/// field_a + scale * field_b in the higher-degree of the two spaces.
NodalField add_fields(const NodalField& a, const NodalField& b, double scale = 1.0);

}  // namespace stpa
