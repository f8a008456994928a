// Job files for the gaugeworks command line: parsing of the JSON job format,
// dispatch to the library, and rendering of tables and reports.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace gaugeworks::cli {

using Json = nlohmann::ordered_json;

enum class ExitCode : int { ok = 0, schema = 1, law = 2 };

enum class Mode { compute, check };

struct JobOutcome {
  ExitCode code = ExitCode::ok;
  std::string table;    // human readable, for stdout
  std::string message;  // diagnostic, for stderr
  Json report;          // mirrors the input with computed fields
};

/// Runs one job document. label names the job in tables and messages;
/// prime_override is the --prime flag.
JobOutcome run_job(const std::string& label, const std::string& text, std::optional<std::int64_t> prime_override,
                   Mode mode);

/// Breuil-Kisin / Tate twist table over n in [from, to] for kind filphi,
/// fgauge or reduced. Throws std::invalid_argument for other kinds.
std::string twist_table(const std::string& kind, std::int64_t prime, int from, int to);

}  // namespace gaugeworks::cli
