#include "stpa/assembly.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "stpa/error.hpp"

namespace stpa {
namespace {

constexpr int kMaxLocal = 16;

void require_same_mesh(const FeSpace& a, const FeSpace& b, const char* where) {
  if (!a.same_mesh(b)) throw NumericalError(std::string(where) + ": incompatible meshes");
}

// Calls body(element, x, weight*h, values_a) for each quadrature point.
template <typename Body>
void for_each_point(const FeSpace& space, const QuadratureRule& rule, Body&& body) {
  const auto& mesh = space.mesh();
  std::array<double, kMaxLocal> vals{};
  const int nb = space.basis().size();
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double x0 = mesh.element_left(e);
    const double h = mesh.element_length(e);
    for (std::size_t g = 0; g < rule.size(); ++g) {
      space.basis().values(rule.points[g], std::span<double>(vals.data(), nb));
      body(e, x0 + rule.points[g] * h, rule.weights[g] * h, std::span<const double>(vals.data(), nb));
    }
  }
}

}  // namespace

OperatorPair assemble_operators(const FeSpace& space) {
  const int n = space.dof_count();
  const int q = space.degree();
  SymmetricBandedMatrix mass(n, q);
  SymmetricBandedMatrix stiff(n, q);
  const auto& rule = gauss_legendre(q + 1);
  const auto& mesh = space.mesh();
  const int nb = q + 1;
  std::array<double, kMaxLocal> v{};
  std::array<double, kMaxLocal> d{};
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double h = mesh.element_length(e);
    for (std::size_t g = 0; g < rule.size(); ++g) {
      space.basis().values(rule.points[g], std::span<double>(v.data(), nb));
      space.basis().derivatives(rule.points[g], std::span<double>(d.data(), nb));
      const double w = rule.weights[g];
      for (int a = 0; a < nb; ++a) {
        const int ia = space.element_dof(e, a);
        if (ia < 0) continue;
        for (int b = 0; b <= a; ++b) {
          const int ib = space.element_dof(e, b);
          if (ib < 0) continue;
          // add() mirrors; diagonal contributions must not be doubled.
          mass.add(ia, ib, w * h * v[a] * v[b]);
          stiff.add(ia, ib, w / h * d[a] * d[b]);
        }
      }
    }
  }
  return OperatorPair{AssembledOperator{FormKind::mass, space, std::move(mass)},
                      AssembledOperator{FormKind::stiffness, space, std::move(stiff)}};
}

SparseMatrix assemble_mixed(const FeSpace& test, const FeSpace& trial, FormKind kind) {
  require_same_mesh(test, trial, "assemble_mixed");
  const auto& rule = gauss_legendre_exact(test.degree() + trial.degree());
  const auto& mesh = test.mesh();
  const int na = test.basis().size();
  const int nb = trial.basis().size();
  std::array<double, kMaxLocal> fa{};
  std::array<double, kMaxLocal> fb{};
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.element_count()) * na * nb);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double h = mesh.element_length(e);
    std::vector<double> local(static_cast<std::size_t>(na) * nb, 0.0);
    for (std::size_t g = 0; g < rule.size(); ++g) {
      double scale = rule.weights[g] * h;
      if (kind == FormKind::mass) {
        test.basis().values(rule.points[g], std::span<double>(fa.data(), na));
        trial.basis().values(rule.points[g], std::span<double>(fb.data(), nb));
      } else {
        test.basis().derivatives(rule.points[g], std::span<double>(fa.data(), na));
        trial.basis().derivatives(rule.points[g], std::span<double>(fb.data(), nb));
        scale = rule.weights[g] / h;
      }
      for (int a = 0; a < na; ++a) {
        for (int b = 0; b < nb; ++b) local[a * nb + b] += scale * fa[a] * fb[b];
      }
    }
    for (int a = 0; a < na; ++a) {
      const int ia = test.element_dof(e, a);
      if (ia < 0) continue;
      for (int b = 0; b < nb; ++b) {
        const int ib = trial.element_dof(e, b);
        if (ib < 0) continue;
        triplets.emplace_back(ia, ib, local[a * nb + b]);
      }
    }
  }
  SparseMatrix m(test.dof_count(), trial.dof_count());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Vector assemble_load(const FeSpace& space, double t, const SpaceTimeFunction& f) {
  Vector b = Vector::Zero(space.dof_count());
  if (!f) return b;
  for_each_point(space, gauss_legendre(kLoadQuadraturePoints),
                 [&](int e, double x, double wh, std::span<const double> vals) {
                   const double fx = f(x, t) * wh;
                   for (std::size_t a = 0; a < vals.size(); ++a) {
                     const int ia = space.element_dof(e, static_cast<int>(a));
                     if (ia >= 0) b[ia] += fx * vals[a];
                   }
                 });
  return b;
}

Vector assemble_load(const FeSpace& space, const SpatialFunction& f) {
  Vector b = Vector::Zero(space.dof_count());
  if (!f) return b;
  for_each_point(space, gauss_legendre(kLoadQuadraturePoints),
                 [&](int e, double x, double wh, std::span<const double> vals) {
                   const double fx = f(x) * wh;
                   for (std::size_t a = 0; a < vals.size(); ++a) {
                     const int ia = space.element_dof(e, static_cast<int>(a));
                     if (ia >= 0) b[ia] += fx * vals[a];
                   }
                 });
  return b;
}

NodalField project_field(const NodalField& source, const FeSpace& target, ProjectionMode mode) {
  require_same_mesh(source.space, target, "project_field");
  if (source.space == target) return source;
  if (mode == ProjectionMode::nodal_interpolation) {
    Vector c(target.dof_count());
    for (int node = 1; node < target.node_count() - 1; ++node) {
      c[node - 1] = source(target.node_position(node));
    }
    return NodalField(target, std::move(c));
  }
  const OperatorPair ops = assemble_operators(target);
  const Vector rhs = assemble_mixed(target, source.space, FormKind::mass) * source.coefficients;
  return NodalField(target, solve_spd(ops.mass.matrix, rhs));
}

NodalField project_field(const SpatialFunction& source, const FeSpace& target,
                         ProjectionMode mode) {
  if (mode == ProjectionMode::nodal_interpolation) {
    Vector c(target.dof_count());
    for (int node = 1; node < target.node_count() - 1; ++node) {
      c[node - 1] = source(target.node_position(node));
    }
    return NodalField(target, std::move(c));
  }
  const OperatorPair ops = assemble_operators(target);
  return NodalField(target, solve_spd(ops.mass.matrix, assemble_load(target, source)));
}

double l2_inner(const NodalField& a, const NodalField& b) {
  require_same_mesh(a.space, b.space, "l2_inner");
  const auto& rule = gauss_legendre_exact(a.space.degree() + b.space.degree());
  const auto& mesh = a.space.mesh();
  const int na = a.space.basis().size();
  const int nb = b.space.basis().size();
  std::array<double, kMaxLocal> fa{};
  std::array<double, kMaxLocal> fb{};
  double sum = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double h = mesh.element_length(e);
    for (std::size_t g = 0; g < rule.size(); ++g) {
      a.space.basis().values(rule.points[g], std::span<double>(fa.data(), na));
      b.space.basis().values(rule.points[g], std::span<double>(fb.data(), nb));
      double va = 0.0;
      double vb = 0.0;
      for (int j = 0; j < na; ++j) {
        const int d = a.space.element_dof(e, j);
        if (d >= 0) va += a.coefficients[d] * fa[j];
      }
      for (int j = 0; j < nb; ++j) {
        const int d = b.space.element_dof(e, j);
        if (d >= 0) vb += b.coefficients[d] * fb[j];
      }
      sum += rule.weights[g] * h * va * vb;
    }
  }
  return sum;
}

double qoi_eval(const SpatialFunction& psi, const NodalField& field) {
  double sum = 0.0;
  if (!psi) return sum;
  const auto& space = field.space;
  for_each_point(space, gauss_legendre(kLoadQuadraturePoints),
                 [&](int e, double x, double wh, std::span<const double> vals) {
                   double u = 0.0;
                   for (std::size_t a = 0; a < vals.size(); ++a) {
                     const int ia = space.element_dof(e, static_cast<int>(a));
                     if (ia >= 0) u += field.coefficients[ia] * vals[a];
                   }
                   sum += wh * psi(x) * u;
                 });
  return sum;
}

double qoi_eval(const NodalField& psi, const NodalField& field) { return l2_inner(psi, field); }

double l2_error(const NodalField& field, const SpatialFunction& g) {
  double sum = 0.0;
  const auto& space = field.space;
  for_each_point(space, gauss_legendre(kLoadQuadraturePoints),
                 [&](int e, double x, double wh, std::span<const double> vals) {
                   double u = 0.0;
                   for (std::size_t a = 0; a < vals.size(); ++a) {
                     const int ia = space.element_dof(e, static_cast<int>(a));
                     if (ia >= 0) u += field.coefficients[ia] * vals[a];
                   }
                   const double diff = u - (g ? g(x) : 0.0);
                   sum += wh * diff * diff;
                 });
  return std::sqrt(sum);
}

}  // namespace stpa
