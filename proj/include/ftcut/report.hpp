#pragma once

#include <string>

#include "ftcut/congest.hpp"
#include "ftcut/mincut.hpp"
#include "json.hpp"

namespace ftcut {

inline constexpr const char* kReportSchema = "ftcut-report/1";

/// Library version baked in at build time.
const char* version() noexcept;

/// One experiment report. Everything here is deterministic given the config;
/// wall-clock data goes to a separate sidecar.
struct Report {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  /// {"status": "agree" | "disagree" | "unchecked" | "not-applicable", ...}
  nlohmann::ordered_json oracle = nlohmann::ordered_json::object();
  nlohmann::ordered_json transcript = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  std::string dump() const { return to_json().dump(2) + "\n"; }
};

nlohmann::ordered_json to_json(const CutResult& r);
nlohmann::ordered_json to_json(const RoundReport& r);

/// Writes `<dir>/<stem>.json` and `<dir>/<stem>.time.json`; returns the report path.
std::string write_report(const Report& report, const std::string& dir, const std::string& stem);

}  // namespace ftcut
