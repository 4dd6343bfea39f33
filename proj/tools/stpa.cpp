// Command line front end: run, sweep, reproduce, selftest.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "stpa/error.hpp"
#include "stpa/experiment.hpp"
#include "stpa/registry.hpp"
#include "stpa/report.hpp"
#include "stpa/selftest.hpp"

namespace {

int exit_code(stpa::ErrorCategory c) {
  switch (c) {
    case stpa::ErrorCategory::config:
      return 2;
    case stpa::ErrorCategory::numerical:
      return 3;
    case stpa::ErrorCategory::io:
      return 4;
    case stpa::ErrorCategory::internal:
      return 1;
  }
  return 1;
}

const char* category_name(stpa::ErrorCategory c) {
  switch (c) {
    case stpa::ErrorCategory::config:
      return "config";
    case stpa::ErrorCategory::numerical:
      return "numerical";
    case stpa::ErrorCategory::io:
      return "io";
    case stpa::ErrorCategory::internal:
      return "internal";
  }
  return "internal";
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void publish(const std::vector<stpa::RunRecord>& records, stpa::OutputFormat format,
             const std::string& path) {
  if (path.empty()) {
    std::cout << stpa::render_report(records, format);
  } else {
    stpa::emit_report(records, format, path);
    std::cerr << "wrote " << records.size() << " record(s) to " << path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parareal / Schwarz solver with adjoint-based error decomposition"};
  app.require_subcommand(1);

  std::string config_path;
  std::string param;
  std::string values;
  std::string table;
  std::string out;
  std::string format;
  int threads = -1;

  auto* run = app.add_subcommand("run", "Run one experiment from a configuration file");
  run->add_option("--config", config_path, "YAML configuration")->required();

  auto* sweep = app.add_subcommand("sweep", "Run an experiment for several values of one key");
  sweep->add_option("--config", config_path, "YAML configuration")->required();
  sweep->add_option("--param", param, "Configuration key to vary")->required();
  sweep->add_option("--values", values, "Comma separated values")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Run a built-in table");
  reproduce->add_option("--table", table, "Registry name")->required();
  reproduce->add_option("--out", out, "Output file (stdout when omitted)");

  auto* list = app.add_subcommand("list", "List the built-in tables");
  auto* selftest = app.add_subcommand("selftest", "Run the property suites");

  for (auto* sub : {run, sweep, reproduce}) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "Worker threads (0: all cores)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    auto adjust = [&](stpa::ExperimentConfig& c) {
      if (!format.empty()) c.set("format", format);
      if (threads >= 0) c.threads = threads;
    };
    if (*run || *sweep) {
      stpa::ExperimentConfig c = stpa::load_config(config_path);
      adjust(c);
      const auto records = *run ? std::vector<stpa::RunRecord>{stpa::run_experiment(c)}
                                : stpa::run_sweep(c, param, split_values(values));
      publish(records, c.format, c.path);
    } else if (*reproduce) {
      const stpa::TableSpec& spec = stpa::find_table(table);
      stpa::ExperimentConfig c = spec.base;
      adjust(c);
      publish(stpa::run_sweep(c, spec.parameter, spec.values), c.format, out);
    } else if (*list) {
      for (const auto& t : stpa::table_registry()) {
        std::cout << t.name << "  (" << t.parameter << ": ";
        for (std::size_t i = 0; i < t.values.size(); ++i) std::cout << (i ? "," : "") << t.values[i];
        std::cout << ")  " << t.caption << "\n";
      }
    } else if (*selftest) {
      bool ok = true;
      for (const auto& r : stpa::run_selftest()) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const stpa::Error& e) {
    std::cerr << "error [" << category_name(e.category()) << "]: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
