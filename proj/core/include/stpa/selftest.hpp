#pragma once

#include <string>
#include <vector>

namespace stpa {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Measured quantity against its tolerance, human readable.
  std::string detail;
};

// Property suites. Each returns one result and never throws for a failed
// property; unexpected exceptions are reported as failures.
CheckResult check_parareal_equivalence(int configs = 20, unsigned seed = 1234);
CheckResult check_parareal_exactness();
CheckResult check_dg0_equivalence();
CheckResult check_galerkin_orthogonality();
/// pardd_iterations geometry (N_s = 20, q_s = 2, P_s = 2, beta = 0.2, tau = 0.4, dt = 0.05):
/// fixed point, geometric contraction and 1e-10 agreement after 100 sweeps.
CheckResult check_schwarz_convergence();
/// Max deviation from the direct solve after `sweeps` sweeps on the same system.
double schwarz_error_after(int sweeps);
CheckResult check_split_identity();
CheckResult check_stpa_collapse();

std::vector<CheckResult> run_selftest();

}  // namespace stpa
