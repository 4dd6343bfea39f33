#include "stpa/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stpa/error.hpp"

namespace stpa {

OverlapDecomposition decompose_domain(const SpatialMesh& mesh, int subdomain_count, double beta,
                                      double tau) {
  const int n = mesh.element_count();
  if (subdomain_count < 1) throw ConfigError("decompose_domain: P_s must be >= 1");
  if (subdomain_count > n) throw ConfigError("decompose_domain: more subdomains than elements");
  if (!(tau > 0.0)) throw ConfigError("decompose_domain: tau must be positive");

  OverlapDecomposition dd;
  dd.subdomain_count = subdomain_count;
  dd.beta = beta;
  dd.tau = tau;

  const double block = static_cast<double>(n) / subdomain_count;
  std::vector<int> cuts(subdomain_count + 1);
  for (int i = 0; i <= subdomain_count; ++i) {
    cuts[i] = static_cast<int>(std::lround(i * block));
  }
  if (subdomain_count > 1) {
    dd.extension = static_cast<int>(std::lround(beta * block));
    if (dd.extension < 1) {
      std::ostringstream msg;
      msg << "decompose_domain: beta = " << beta << " gives no overlap element; need beta >= "
          << 0.5 / block;
      throw ConfigError(msg.str());
    }
  }
  for (int i = 0; i < subdomain_count; ++i) {
    const int lo = i > 0 ? std::max(0, cuts[i] - dd.extension) : 0;
    const int hi = i + 1 < subdomain_count ? std::min(n, cuts[i + 1] + dd.extension) : n;
    dd.subdomains.push_back({lo, hi});
  }
  for (int i = 0; i < subdomain_count; ++i) {
    for (int j = i + 1; j < subdomain_count; ++j) {
      const int lo = std::max(dd.subdomains[i].first, dd.subdomains[j].first);
      const int hi = std::min(dd.subdomains[i].last, dd.subdomains[j].last);
      if (hi > lo) dd.overlaps.push_back({i, j, {lo, hi}});
    }
  }
  return dd;
}

SubdomainDofs subdomain_dofs(const FeSpace& space, const ElementRange& elements) {
  const int q = space.degree();
  const int n = space.mesh().element_count();
  SubdomainDofs d;
  d.interior_first = elements.first * q;  // dof of node first*q + 1
  d.interior_count = elements.size() * q - 1;
  d.left_trace = elements.first > 0 ? elements.first * q - 1 : -1;
  d.right_trace = elements.last < n ? elements.last * q - 1 : -1;
  return d;
}

AdditiveSchwarz::AdditiveSchwarz(FeSpace space, SymmetricBandedMatrix system,
                                 OverlapDecomposition decomposition)
    : space_(std::move(space)), system_(std::move(system)),
      decomposition_(std::move(decomposition)) {
  if (system_.size() != space_.dof_count()) {
    throw NumericalError("AdditiveSchwarz: system size does not match space");
  }
  for (const auto& range : decomposition_.subdomains) {
    const SubdomainDofs d = subdomain_dofs(space_, range);
    dofs_.push_back(d);
    local_factors_.emplace_back(system_.principal_block(d.interior_first, d.interior_count));
  }
}

Vector AdditiveSchwarz::local_solve(int i, const Vector& rhs, const Vector& iterate) const {
  const SubdomainDofs& d = dofs_[i];
  Vector trace = Vector::Zero(space_.dof_count());
  if (d.left_trace >= 0) trace[d.left_trace] = iterate[d.left_trace];
  if (d.right_trace >= 0) trace[d.right_trace] = iterate[d.right_trace];
  const Vector lifted = system_.multiply(trace);
  const Vector local_rhs =
      rhs.segment(d.interior_first, d.interior_count) - lifted.segment(d.interior_first, d.interior_count);
  Vector out = iterate;
  out.segment(d.interior_first, d.interior_count) = local_factors_[i].solve(local_rhs);
  return out;
}

AdditiveSchwarz::Result AdditiveSchwarz::solve(const Vector& rhs, const Vector& initial_guess,
                                               int sweeps) const {
  if (sweeps < 1) throw ConfigError("AdditiveSchwarz: K_s must be >= 1");
  const int p = decomposition_.subdomain_count;
  const double tau = decomposition_.tau;
  Result result;
  result.record.iterates.reserve(sweeps + 1);
  result.record.iterates.push_back(initial_guess);
  Vector current = initial_guess;
  for (int k = 0; k < sweeps; ++k) {
    std::vector<Vector> locals;
    locals.reserve(p);
    for (int i = 0; i < p; ++i) locals.push_back(local_solve(i, rhs, current));
    Vector next = (1.0 - tau * p) * current;
    for (int i = 0; i < p; ++i) next += tau * locals[i];
    result.record.local.push_back(std::move(locals));
    result.record.iterates.push_back(next);
    current = std::move(next);
  }
  result.solution = std::move(current);
  return result;
}

AdditiveSchwarz::Result asdd_solve(const FeSpace& space, const SymmetricBandedMatrix& system,
                                   const Vector& rhs, const OverlapDecomposition& decomposition,
                                   int sweeps, const Vector& initial_guess) {
  return AdditiveSchwarz(space, system, decomposition).solve(rhs, initial_guess, sweeps);
}

}  // namespace stpa
