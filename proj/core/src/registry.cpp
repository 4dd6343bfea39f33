#include "stpa/registry.hpp"

#include "stpa/error.hpp"

namespace stpa {
namespace {

ExperimentConfig tpa(int nhat_t, int r, int p_t, int k_t, int nhat_s, int qhat_s = 1,
                     int q_s = 2) {
  ExperimentConfig c;
  c.nu = 4.0;
  c.mu = 1.0;
  c.Nhat_t = nhat_t;
  c.r = r;
  c.P_t = p_t;
  c.K_t = k_t;
  c.Nhat_s = nhat_s;
  c.qhat_s = qhat_s;
  c.q_s = q_s;
  return c;
}

ExperimentConfig cg(int nhat_t, int r, int p_t, int k_t, int nhat_s, int qhat_s = 1, int q_s = 2) {
  ExperimentConfig c = tpa(nhat_t, r, p_t, k_t, nhat_s, qhat_s, q_s);
  c.integrator = Integrator::cg;
  c.qhat_t = 1;
  c.q_t = 1;
  return c;
}

ExperimentConfig stpa(int nhat_t, int r, int nhat_s, int p_s, int k_s, double beta) {
  ExperimentConfig c = tpa(nhat_t, r, 10, 2, nhat_s);
  c.mu = 2.0;
  c.schwarz = true;
  c.P_s = p_s;
  c.K_s = k_s;
  c.beta = beta;
  c.tau = 0.4;
  return c;
}

std::vector<TableSpec> build() {
  return {
      {"par_iterations", "TPA, number of Parareal iterations", tpa(20, 16, 10, 1, 20), "K_t",
       {"1", "2", "3"}},
      {"par_subdomains", "TPA, number of temporal subdomains", tpa(40, 4, 10, 2, 20), "P_t",
       {"2", "5", "10"}},
      {"par_fine_time", "TPA, fine time scale", tpa(10, 2, 10, 2, 20), "r", {"2", "4"}},
      {"par_coarse_time", "TPA, coarse time scale", tpa(10, 2, 10, 2, 20), "Nhat_t", {"10", "20"}},
      {"par_space", "TPA, spatial scale", tpa(100, 8, 10, 6, 5, 1, 1), "Nhat_s", {"5", "10", "20"}},
      {"pardd_fine_time", "STPA, fine time scale", stpa(10, 2, 80, 2, 8, 0.2), "r",
       {"2", "4", "8"}},
      {"pardd_coarse_time", "STPA, coarse time scale", stpa(10, 2, 80, 2, 8, 0.2), "Nhat_t",
       {"10", "20", "40"}},
      {"pardd_iterations", "STPA, number of Schwarz iterations", stpa(20, 2, 20, 2, 2, 0.2), "K_s",
       {"2", "6"}},
      {"pardd_subdomains", "STPA, number of spatial subdomains", stpa(20, 2, 40, 2, 2, 0.1), "P_s",
       {"2", "4"}},
      {"pardd_overlap", "STPA, spatial overlap", stpa(20, 2, 20, 2, 2, 0.1), "beta",
       {"0.1", "0.2"}},
      {"cg_iterations", "cG(1) TPA, number of Parareal iterations", cg(10, 4, 10, 1, 20), "K_t",
       {"1", "2", "3"}},
      {"cg_subdomains", "cG(1) TPA, number of temporal subdomains", cg(10, 4, 10, 2, 20), "P_t",
       {"2", "5", "10"}},
      {"cg_fine_time", "cG(1) TPA, fine time scale", cg(10, 2, 10, 2, 20), "r", {"2", "4"}},
      {"cg_coarse_time", "cG(1) TPA, coarse time scale", cg(10, 2, 10, 2, 20), "Nhat_t",
       {"10", "20"}},
      {"cg_space", "cG(1) TPA, spatial scale", cg(20, 6, 10, 6, 5, 1, 1), "Nhat_s",
       {"5", "10", "20"}},
  };
}

}  // namespace

const std::vector<TableSpec>& table_registry() {
  static const std::vector<TableSpec> tables = build();
  return tables;
}

const TableSpec& find_table(const std::string& name) {
  for (const auto& t : table_registry()) {
    if (t.name == name) return t;
  }
  std::string known;
  for (const auto& t : table_registry()) known += (known.empty() ? "" : ", ") + t.name;
  throw ConfigError("unknown table '" + name + "'; known tables: " + known);
}

}  // namespace stpa
