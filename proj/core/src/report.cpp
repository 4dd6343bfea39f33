#include "stpa/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "stpa/error.hpp"

namespace stpa {
namespace {

using Json = nlohmann::ordered_json;

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

std::string csv(const std::vector<RunRecord>& records) {
  const auto columns = records.front().columns();
  const bool with_param = records.front().parameter.has_value();
  std::string out;
  if (with_param) out += records.front().parameter->first + ",";
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& rec : records) {
    if (rec.columns() != columns || rec.parameter.has_value() != with_param) {
      throw ConfigError("report: records do not share one column layout");
    }
    if (with_param) out += rec.parameter->second + ",";
    const auto row = rec.row();
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + number(row[i]);
    out += "\n";
  }
  return out;
}

Json to_json(const RunRecord& rec) {
  Json j;
  if (rec.parameter) j["parameter"] = {{"name", rec.parameter->first}, {"value", rec.parameter->second}};
  Json config = Json::object();
  for (const auto& [k, v] : rec.config.entries()) config[k] = v;
  j["config"] = config;
  j["mode"] = std::string(mode_name(rec.breakdown.mode));
  Json comps = Json::array();
  for (const auto& [name, value] : rec.breakdown.components) {
    comps.push_back({{"name", name}, {"value", value}});
  }
  j["components"] = comps;
  j["estimated"] = rec.breakdown.estimated;
  j["true_error"] = rec.breakdown.true_error;
  j["gamma"] = rec.breakdown.gamma ? Json(*rec.breakdown.gamma) : Json(nullptr);
  j["true_qoi"] = rec.true_qoi;
  j["computed_qoi"] = rec.computed_qoi;
  j["wall_seconds"] = rec.wall_seconds;
  return j;
}

BreakdownMode mode_from(const std::string& name) {
  for (auto m : {BreakdownMode::tpa, BreakdownMode::stpa, BreakdownMode::coarse}) {
    if (mode_name(m) == name) return m;
  }
  throw ConfigError("report: unknown breakdown mode '" + name + "'");
}

}  // namespace

std::string render_report(const std::vector<RunRecord>& records, OutputFormat format) {
  if (records.empty()) throw ConfigError("report: no records");
  if (format == OutputFormat::csv) return csv(records);
  Json all = Json::array();
  for (const auto& rec : records) all.push_back(to_json(rec));
  return all.dump(2) + "\n";
}

void emit_report(const std::vector<RunRecord>& records, OutputFormat format,
                 const std::filesystem::path& path) {
  const std::string text = render_report(records, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<RunRecord> parse_json_report(const std::string& text) {
  std::vector<RunRecord> out;
  try {
    const Json all = Json::parse(text);
    for (const auto& j : all) {
      RunRecord rec;
      if (j.contains("parameter")) {
        rec.parameter = std::make_pair(j["parameter"]["name"].get<std::string>(),
                                       j["parameter"]["value"].get<std::string>());
      }
      for (const auto& [k, v] : j["config"].items()) rec.config.set(k, v.get<std::string>());
      rec.breakdown.mode = mode_from(j["mode"].get<std::string>());
      for (const auto& c : j["components"]) {
        rec.breakdown.components.emplace_back(c["name"].get<std::string>(), c["value"].get<double>());
      }
      rec.breakdown.estimated = j["estimated"].get<double>();
      rec.breakdown.true_error = j["true_error"].get<double>();
      if (!j["gamma"].is_null()) rec.breakdown.gamma = j["gamma"].get<double>();
      rec.true_qoi = j["true_qoi"].get<double>();
      rec.computed_qoi = j["computed_qoi"].get<double>();
      rec.wall_seconds = j["wall_seconds"].get<double>();
      out.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report: malformed JSON: ") + e.what());
  }
  return out;
}

}  // namespace stpa
