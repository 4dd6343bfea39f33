#include "stpa/fe_space.hpp"

#include <string>
#include <vector>

#include "stpa/error.hpp"

namespace stpa {

FeSpace::FeSpace(std::shared_ptr<const SpatialMesh> mesh, int degree)
    : mesh_(std::move(mesh)), degree_(degree) {
  if (!mesh_) throw ConfigError("FeSpace: null mesh");
  if (degree_ < 1) throw ConfigError("FeSpace: degree must be >= 1");
  if (dof_count() < 1) throw ConfigError("FeSpace: space has no interior dofs");
  basis_ = std::make_shared<const LagrangeBasis>(degree_);
}

double FeSpace::node_position(int node) const {
  const int e = node == node_count() - 1 ? mesh_->element_count() - 1 : node / degree_;
  const int j = node - e * degree_;
  return mesh_->element_left(e) + basis_->nodes()[j] * mesh_->element_length(e);
}

NodalField::NodalField(FeSpace s, Vector c) : space(std::move(s)), coefficients(std::move(c)) {
  if (coefficients.size() != space.dof_count()) {
    throw NumericalError("NodalField: coefficient length " + std::to_string(coefficients.size()) +
                         " does not match dof count " + std::to_string(space.dof_count()));
  }
}

NodalField NodalField::zero(const FeSpace& space) {
  return NodalField(space, Vector::Zero(space.dof_count()));
}

double NodalField::operator()(double x) const { return evaluate(space, coefficients, x); }

double evaluate(const FeSpace& space, const Vector& coefficients, double x) {
  const auto& mesh = space.mesh();
  const int e = mesh.find_element(x);
  const double xi = (x - mesh.element_left(e)) / mesh.element_length(e);
  const int nb = space.basis().size();
  double vals[16];
  space.basis().values(xi, std::span<double>(vals, nb));
  double sum = 0.0;
  for (int j = 0; j < nb; ++j) {
    const int dof = space.element_dof(e, j);
    if (dof >= 0) sum += coefficients[dof] * vals[j];
  }
  return sum;
}

NodalField lift(const NodalField& field, const FeSpace& target) {
  if (!field.space.same_mesh(target)) throw NumericalError("lift: spaces live on different meshes");
  if (field.space == target) return field;
  if (target.degree() < field.space.degree()) {
    throw NumericalError("lift: target degree lower than source degree");
  }
  Vector c(target.dof_count());
  for (int node = 1; node < target.node_count() - 1; ++node) {
    c[node - 1] = field(target.node_position(node));
  }
  return NodalField(target, std::move(c));
}

NodalField add_fields(const NodalField& a, const NodalField& b, double scale) {
  if (a.space == b.space) return NodalField(a.space, a.coefficients + scale * b.coefficients);
  if (a.space.degree() >= b.space.degree()) {
    const NodalField bl = lift(b, a.space);
    return NodalField(a.space, a.coefficients + scale * bl.coefficients);
  }
  const NodalField al = lift(a, b.space);
  return NodalField(b.space, al.coefficients + scale * b.coefficients);
}

}  // namespace stpa
