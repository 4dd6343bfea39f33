#include "stpa/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>

#include "stpa/error.hpp"
#include "stpa/mesh.hpp"
#include "stpa/schwarz.hpp"

namespace stpa {
namespace {

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("'" + key + "' expects an integer, got '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(value)) {
    throw ConfigError("'" + key + "' expects a real number, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("'" + key + "' expects a boolean, got '" + text + "'");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <class T>
Field numeric(T ExperimentConfig::*member) {
  if constexpr (std::is_same_v<T, int>) {
    return {[member](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.*member = parse_int(k, v);
            },
            [member](const ExperimentConfig& c) { return std::to_string(c.*member); }};
  } else {
    return {[member](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.*member = parse_double(k, v);
            },
            [member](const ExperimentConfig& c) { return format_double(c.*member); }};
  }
}

Field choice(std::string ExperimentConfig::*member, std::vector<std::string> allowed) {
  return {[member, allowed](ExperimentConfig& c, const std::string& k, const std::string& v) {
            for (const auto& a : allowed) {
              if (a == v) {
                c.*member = v;
                return;
              }
            }
            throw ConfigError("'" + k + "' has unsupported value '" + v + "'");
          },
          [member](const ExperimentConfig& c) { return c.*member; }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    using C = ExperimentConfig;
    std::vector<std::pair<std::string, Field>> t;
    t.emplace_back("nu", numeric(&C::nu));
    t.emplace_back("mu", numeric(&C::mu));
    t.emplace_back("T", numeric(&C::T));
    t.emplace_back("x_lo", numeric(&C::x_lo));
    t.emplace_back("x_hi", numeric(&C::x_hi));
    t.emplace_back("scale", numeric(&C::scale));
    t.emplace_back("Nhat_t", numeric(&C::Nhat_t));
    t.emplace_back("r", numeric(&C::r));
    t.emplace_back("P_t", numeric(&C::P_t));
    t.emplace_back("K_t", numeric(&C::K_t));
    t.emplace_back("integrator",
                   Field{[](C& c, const std::string& k, const std::string& v) {
                           if (v == "be") {
                             c.integrator = Integrator::be;
                           } else if (v == "cg") {
                             c.integrator = Integrator::cg;
                           } else {
                             throw ConfigError("'" + k + "' must be 'be' or 'cg', got '" + v + "'");
                           }
                         },
                         [](const C& c) { return to_string(c.integrator); }});
    t.emplace_back("qhat_t", numeric(&C::qhat_t));
    t.emplace_back("q_t", numeric(&C::q_t));
    t.emplace_back("Nhat_s", numeric(&C::Nhat_s));
    t.emplace_back("qhat_s", numeric(&C::qhat_s));
    t.emplace_back("q_s", numeric(&C::q_s));
    t.emplace_back("schwarz",
                   Field{[](C& c, const std::string& k, const std::string& v) {
                           c.schwarz = parse_bool(k, v);
                         },
                         [](const C& c) { return std::string(c.schwarz ? "true" : "false"); }});
    t.emplace_back("P_s", numeric(&C::P_s));
    t.emplace_back("K_s", numeric(&C::K_s));
    t.emplace_back("beta", numeric(&C::beta));
    t.emplace_back("tau", numeric(&C::tau));
    t.emplace_back("schwarz_guess", choice(&C::schwarz_guess, {"zero", "previous"}));
    t.emplace_back("handoff", choice(&C::handoff, {"coarse", "exact"}));
    t.emplace_back("adjoint_time_degree", numeric(&C::adjoint_time_degree));
    t.emplace_back("adjoint_space_degree", numeric(&C::adjoint_space_degree));
    t.emplace_back("format",
                   Field{[](C& c, const std::string& k, const std::string& v) {
                           if (v == "csv") {
                             c.format = OutputFormat::csv;
                           } else if (v == "json") {
                             c.format = OutputFormat::json;
                           } else {
                             throw ConfigError("'" + k + "' must be 'csv' or 'json', got '" + v + "'");
                           }
                         },
                         [](const C& c) { return to_string(c.format); }});
    t.emplace_back("path", Field{[](C& c, const std::string&, const std::string& v) { c.path = v; },
                                 [](const C& c) { return c.path; }});
    t.emplace_back("threads", numeric(&C::threads));
    return t;
  }();
  return table;
}

const Field& field(const std::string& key) {
  for (const auto& [name, f] : fields()) {
    if (name == key) return f;
  }
  throw ConfigError("unknown configuration key '" + key + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.first);
    return k;
  }();
  return keys;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  field(key).set(*this, key, value);
}

std::string ExperimentConfig::get(const std::string& key) const { return field(key).get(*this); }

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, f] : fields()) out.emplace_back(name, f.get(*this));
  return out;
}

void ExperimentConfig::validate() const {
  require(nu != 0.0 && mu != 0.0, "nu and mu must be nonzero");
  require(T > 0.0, "T must be positive");
  require(x_lo < x_hi, "x_lo must be smaller than x_hi");
  require(Nhat_t >= 1, "Nhat_t must be >= 1");
  require(r >= 1, "r must be >= 1");
  require(P_t >= 1, "P_t must be >= 1");
  require(K_t >= 1, "K_t must be >= 1");
  require(Nhat_t % P_t == 0, "Nhat_t = " + std::to_string(Nhat_t) +
                                 " must be divisible by P_t = " + std::to_string(P_t));
  require(Nhat_s >= 1, "Nhat_s must be >= 1");
  require(qhat_s >= 1 && q_s >= 1, "spatial degrees must be >= 1");
  require(qhat_s <= q_s, "qhat_s must not exceed q_s");
  require(adjoint_time_degree >= 1 && adjoint_space_degree >= 1, "adjoint degrees must be >= 1");
  require(threads >= 0, "threads must be >= 0");
  if (integrator == Integrator::cg) {
    require(qhat_t >= 1 && q_t >= 1, "cG time degrees must be >= 1");
  }
  if (schwarz) {
    require(integrator == Integrator::be, "Schwarz fine solves require the be integrator");
    require(K_s >= 1, "K_s must be >= 1");
    require(P_s >= 1 && P_s <= Nhat_s, "P_s must lie in [1, Nhat_s]");
    decompose_domain(SpatialMesh::uniform(0.0, 1.0, Nhat_s), P_s, beta, tau);
  }
}

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  ExperimentConfig c;
  if (root.IsNull()) return c;
  if (!root.IsMap()) throw ConfigError("configuration must be a flat key/value mapping");
  for (const auto& entry : root) {
    const auto key = entry.first.as<std::string>();
    if (!entry.second.IsScalar()) throw ConfigError("'" + key + "' must be a scalar");
    c.set(key, entry.second.as<std::string>());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_string(Integrator integrator) { return integrator == Integrator::be ? "be" : "cg"; }
std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

}  // namespace stpa
