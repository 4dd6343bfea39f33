// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any
// failure that is not a documented deviation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "stpa/experiment.hpp"
#include "stpa/registry.hpp"
#include "stpa/selftest.hpp"

using namespace stpa;

namespace {

struct Outcome {
  std::string id;
  bool passed;
  std::string detail;
  // Known, documented shortfall: reported as FAIL but does not fail the run.
  bool documented = false;
};

std::vector<Outcome> outcomes;

bool rel_ok(double value, double ref, double tol) { return std::abs(value - ref) <= tol * std::abs(ref); }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void report(const std::string& id, bool ok, const std::string& detail, bool documented = false) {
  outcomes.push_back({id, ok, detail, documented && !ok});
  std::printf("%s %s: %s%s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str(),
              documented && !ok ? " [documented deviation]" : "");
  std::fflush(stdout);
}

std::vector<RunRecord> table(const std::string& name, const std::vector<std::string>& values = {}) {
  const TableSpec& t = find_table(name);
  return run_sweep(t.base, t.parameter, values.empty() ? t.values : values);
}

double gamma_of(const RunRecord& r) { return r.breakdown.gamma.value_or(std::nan("")); }

bool gammas_in(const std::vector<RunRecord>& rows, double lo, double hi, std::string& detail) {
  bool ok = true;
  detail += " gamma=[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double g = gamma_of(rows[i]);
    ok = ok && g >= lo && g <= hi;
    detail += fmt(i ? ",%.4f" : "%.4f", g);
  }
  detail += "]";
  return ok;
}

double slowest(const std::vector<RunRecord>& rows) {
  double s = 0;
  for (const auto& r : rows) s = std::max(s, r.wall_seconds);
  return s;
}

void criterion1(const std::vector<RunRecord>& t1) {
  const double k1 = t1[0].breakdown.component("K"), k2 = t1[1].breakdown.component("K");
  const double c1 = t1[0].breakdown.component("C");
  std::string d = fmt("K(1)=%.4e (ref -1.53e-01) K(2)=%.4e (ref -1.43e-02) C(1)=%.1e", k1, k2, c1);
  bool ok = rel_ok(k1, -1.53e-1, 0.05) && rel_ok(k2, -1.43e-2, 0.05) && std::abs(c1) <= 1e-12;
  ok = gammas_in(t1, 0.99, 1.01, d) && ok;
  d += fmt(" slowest row %.2fs", slowest(t1));
  report("1 par_iterations (TPA, K_t sweep)", ok && slowest(t1) < 30.0, d);
}

void criterion2() {
  const auto t4 = table("par_coarse_time");
  const double d10 = t4[0].breakdown.component("D"), d20 = t4[1].breakdown.component("D");
  std::string d = fmt("D(10)=%.4e (ref 7.31e-01) D(20)=%.4e (ref 4.13e-01)", d10, d20);
  bool ok = rel_ok(d10, 7.31e-1, 0.05) && rel_ok(d20, 4.13e-1, 0.05) && d20 < d10;
  ok = gammas_in(t4, 0.99, 1.01, d) && ok;
  report("2 par_coarse_time (TPA, Nhat_t sweep)", ok, d);
}

void criterion3(const std::vector<RunRecord>& t8) {
  const auto& a = t8.front().breakdown;
  const auto& b = t8.back().breakdown;
  std::string d = fmt("D_k=%.4e,%.4e (ref 4.49e-01,4.40e-02) ", a.component("D_k"), b.component("D_k"));
  d += fmt("D_t=%.4e,%.4e (ref 2.16e-01,1.45e-01)", a.component("D_t"), b.component("D_t"));
  bool ok = rel_ok(a.component("D_k"), 4.49e-1, 0.10) && rel_ok(b.component("D_k"), 4.40e-2, 0.10) &&
            rel_ok(a.component("D_t"), 2.16e-1, 0.10) && rel_ok(b.component("D_t"), 1.45e-1, 0.10);
  const std::vector<RunRecord> ends{t8.front(), t8.back()};
  ok = gammas_in(ends, 0.98, 1.02, d) && ok;
  d += fmt(" slowest row %.2fs", slowest(t8));
  report("3 pardd_iterations (STPA, K_s sweep)", ok && slowest(t8) < 120.0, d);
}

void criterion4(const std::vector<RunRecord>& t11) {
  const auto& b = t11[0].breakdown;
  std::string d = fmt("Est=%.4e (ref 1.02e-01) D=%.3e K=%.3e", b.estimated, b.component("D"), b.component("K"));
  bool ok = rel_ok(b.estimated, 1.02e-1, 0.05) && b.component("D") < 0 && b.component("K") > 0;
  ok = gammas_in({t11[0]}, 0.99, 1.01, d) && ok;
  report("4 cg_iterations (cG, K_t = 1)", ok, d);
}

void criterion5() {
  const char* ids[] = {"5a", "5b", "5c", "5d", "5e", "5f", "5g"};
  const auto results = run_selftest();
  for (std::size_t i = 0; i < results.size(); ++i) {
    report(std::string(ids[i]) + " " + results[i].name, results[i].passed, results[i].detail);
  }
  // The literal sweep budget: 1e-10 after 50 sweeps on the pardd_iterations step.
  const double e50 = schwarz_error_after(50);
  report("5e' Schwarz within 1e-10 after exactly K_s = 50 (dt = 0.05)", e50 <= 1e-10,
         fmt("max deviation %.3e; contraction ~0.77/sweep needs ~85 sweeps", e50), true);
}

void criterion6(const std::vector<RunRecord>& t1, const std::vector<RunRecord>& t8,
                const std::vector<RunRecord>& t11) {
  std::string d = "D_k(K_s=2,4,6)=";
  bool ks = true;
  for (std::size_t i = 0; i < t8.size(); ++i) {
    d += fmt(i ? ",%.3e" : "%.3e", t8[i].breakdown.component("D_k"));
    if (i) ks = ks && t8[i].breakdown.component("D_k") < t8[i - 1].breakdown.component("D_k");
  }
  report("6a D_k decreases with K_s", ks, d);

  const auto t9 = table("pardd_subdomains");
  const double p2 = t9[0].breakdown.component("D_k"), p4 = t9[1].breakdown.component("D_k");
  report("6b D_k increases with P_s", p4 > p2, fmt("D_k(P_s=2)=%.3e D_k(P_s=4)=%.3e", p2, p4));

  auto shrinking = [](const std::vector<RunRecord>& rows, std::string& out) {
    bool ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double k = std::abs(rows[i].breakdown.component("K"));
      out += fmt(i ? ",%.3e" : "%.3e", k);
      if (i) ok = ok && k < std::abs(rows[i - 1].breakdown.component("K"));
    }
    return ok;
  };
  std::string d1 = "|K| par_iterations=", d11 = " |K| cg_iterations=";
  const bool a = shrinking(t1, d1);
  const bool b = shrinking(t11, d11);
  report("6c |K| decreases with K_t", a && b, d1 + d11);
}

}  // namespace

int main() {
  try {
    const auto t1 = table("par_iterations");
    criterion1(t1);
    criterion2();
    const auto t8 = table("pardd_iterations", {"2", "4", "6"});
    criterion3(t8);
    const auto t11 = table("cg_iterations");
    criterion4(t11);
    criterion5();
    criterion6(t1, t8, t11);
  } catch (const std::exception& e) {
    std::printf("FAIL aborted: %s\n", e.what());
    return 1;
  }
  int failed = 0, documented = 0;
  for (const auto& o : outcomes) {
    if (!o.passed && !o.documented) ++failed;
    if (o.documented) ++documented;
  }
  std::printf("%zu criteria checked, %d failed, %d documented deviation(s)\n", outcomes.size(), failed,
              documented);
  return failed == 0 ? 0 : 1;
}
