#pragma once

#include <Eigen/SparseCore>
#include <functional>

#include "stpa/banded.hpp"
#include "stpa/fe_space.hpp"

namespace stpa {

using SpatialFunction = std::function<double(double x)>;
using SpaceTimeFunction = std::function<double(double x, double t)>;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Points per element for loads, QoI and analytic-data integrals.
inline constexpr int kLoadQuadraturePoints = 10;

enum class FormKind { mass, stiffness };

struct AssembledOperator {
  FormKind kind;
  FeSpace space;
  SymmetricBandedMatrix matrix;
};

struct OperatorPair {
  AssembledOperator mass;
  AssembledOperator stiffness;
};

/// Mass (phi_i, phi_j) and stiffness (phi_i', phi_j') on the Dirichlet dofs,
/// integrated exactly with q+1 Gauss points per element.
OperatorPair assemble_operators(const FeSpace& space);

/// Rectangular form matrix with rows indexed by `test` dofs and columns by
/// `trial` dofs (both spaces on the same mesh, integrated exactly).
SparseMatrix assemble_mixed(const FeSpace& test, const FeSpace& trial, FormKind kind);

/// Entry i = integral of f(x, t) phi_i(x).
Vector assemble_load(const FeSpace& space, double t, const SpaceTimeFunction& f);
Vector assemble_load(const FeSpace& space, const SpatialFunction& f);

enum class ProjectionMode { l2_projection, nodal_interpolation };

NodalField project_field(const NodalField& source, const FeSpace& target, ProjectionMode mode);
NodalField project_field(const SpatialFunction& source, const FeSpace& target,
                         ProjectionMode mode);

/// L2 inner product of two fields, exact for the product degree.
double l2_inner(const NodalField& a, const NodalField& b);

/// Integral of psi * field with the 10-point element rule.
double qoi_eval(const SpatialFunction& psi, const NodalField& field);
double qoi_eval(const NodalField& psi, const NodalField& field);

/// L2 norm of (field - g) with the 10-point element rule.
double l2_error(const NodalField& field, const SpatialFunction& g);

}  // namespace stpa
