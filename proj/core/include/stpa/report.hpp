#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stpa/experiment.hpp"

namespace stpa {

/// CSV: optional parameter column, est_err, gamma, components; one row per
/// record, numbers in %.17e. JSON: an array of full records.
std::string render_report(const std::vector<RunRecord>& records, OutputFormat format);

/// Writes render_report to `path`; throws IoError if it cannot be written.
void emit_report(const std::vector<RunRecord>& records, OutputFormat format,
                 const std::filesystem::path& path);

/// Parses the JSON form back into records.
std::vector<RunRecord> parse_json_report(const std::string& text);

}  // namespace stpa
