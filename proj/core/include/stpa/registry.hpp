#pragma once

#include <string>
#include <vector>

#include "stpa/config.hpp"

namespace stpa {

/// A built-in parameter study: a base configuration and one swept key.
struct TableSpec {
  std::string name;
  std::string caption;
  ExperimentConfig base;
  std::string parameter;
  std::vector<std::string> values;
};

const std::vector<TableSpec>& table_registry();

/// Throws ConfigError listing the known names when `name` is not registered.
const TableSpec& find_table(const std::string& name);

}  // namespace stpa
