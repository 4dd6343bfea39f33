#pragma once

#include <vector>

#include "stpa/banded.hpp"
#include "stpa/fe_space.hpp"

namespace stpa {

/// Half-open element index range [first, last).
struct ElementRange {
  int first = 0;
  int last = 0;

  int size() const noexcept { return last - first; }
  bool operator==(const ElementRange&) const = default;
};

/// Overlapping element-snapped partition of the spatial mesh.
///
/// The mesh is cut into `subdomain_count` contiguous base blocks; every
/// interior cut is then widened by `extension` = round(beta * N_s / P_s)
/// elements on each side.
struct OverlapDecomposition {
  struct Overlap {
    int i = 0;
    int j = 0;
    ElementRange elements;
  };

  int subdomain_count = 1;
  double beta = 0.0;
  double tau = 0.4;
  int extension = 0;
  std::vector<ElementRange> subdomains;
  std::vector<Overlap> overlaps;
};

OverlapDecomposition decompose_domain(const SpatialMesh& mesh, int subdomain_count, double beta,
                                      double tau = 0.4);

/// Dof layout of a subdomain in a particular space. Interior dofs form a
/// contiguous block; the trace dofs sit on the subdomain's end vertices and are
/// -1 where the subdomain touches the physical boundary.
struct SubdomainDofs {
  int interior_first = 0;
  int interior_count = 0;
  int left_trace = -1;
  int right_trace = -1;

  int closure_first() const noexcept { return left_trace >= 0 ? left_trace : interior_first; }
  int closure_last() const noexcept {
    return right_trace >= 0 ? right_trace : interior_first + interior_count - 1;
  }
};

SubdomainDofs subdomain_dofs(const FeSpace& space, const ElementRange& elements);

/// Sweep history of one additive Schwarz solve.
struct SchwarzSweepRecord {
  /// iterates[k] = U^{n,k}, k = 0..K_s.
  std::vector<Vector> iterates;
  /// local[k][i] = Pi_i U_{DD,i}^{k+1}: the subdomain solution of sweep k+1
  /// on the closure of subdomain i, the previous iterate elsewhere.
  std::vector<std::vector<Vector>> local;

  int sweeps() const noexcept { return static_cast<int>(local.size()); }
};

/// Additive Schwarz iteration with Richardson blending for one SPD system.
/// Subdomain factorizations are computed once at construction.
class AdditiveSchwarz {
 public:
  AdditiveSchwarz(FeSpace space, SymmetricBandedMatrix system, OverlapDecomposition decomposition);

  struct Result {
    Vector solution;
    SchwarzSweepRecord record;
  };

  Result solve(const Vector& rhs, const Vector& initial_guess, int sweeps) const;

  /// Subdomain solution with Dirichlet trace taken from `iterate`, returned as
  /// Pi_i applied to it (global vector).
  Vector local_solve(int subdomain, const Vector& rhs, const Vector& iterate) const;

  const FeSpace& space() const noexcept { return space_; }
  const SymmetricBandedMatrix& system() const noexcept { return system_; }
  const OverlapDecomposition& decomposition() const noexcept { return decomposition_; }
  const std::vector<SubdomainDofs>& subdomain_layout() const noexcept { return dofs_; }

 private:
  FeSpace space_;
  SymmetricBandedMatrix system_;
  OverlapDecomposition decomposition_;
  std::vector<SubdomainDofs> dofs_;
  std::vector<BandedCholesky> local_factors_;
};

/// One-shot form: factor, run `sweeps` iterations from `initial_guess`.
AdditiveSchwarz::Result asdd_solve(const FeSpace& space, const SymmetricBandedMatrix& system,
                                   const Vector& rhs, const OverlapDecomposition& decomposition,
                                   int sweeps, const Vector& initial_guess);

}  // namespace stpa
