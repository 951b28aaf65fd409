#include "ftcut/report.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "ftcut/types.hpp"

namespace ftcut {

const char* version() noexcept { return FTCUT_VERSION; }

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["version"] = version();
  j["command"] = command;
  j["config"] = config;
  j["seeds"] = seeds;
  j["result"] = result;
  j["oracle"] = oracle;
  j["transcript"] = transcript;
  return j;
}

nlohmann::ordered_json to_json(const CutResult& r) {
  nlohmann::ordered_json j;
  j["mode"] = r.mode;
  j["lambda"] = r.lambda;
  if (r.value)
    j["value"] = *r.value;
  else
    j["value"] = ">" + std::to_string(r.lambda);
  j[r.mode.find("vertex") == std::string::npos ? "witness_edges" : "witness_vertices"] = r.witness;
  if (r.discovered_by != kNoNode) j["discovered_by"] = r.discovered_by;
  j["seed"] = r.seed;
  j["diameter"] = r.diameter;
  j["depth_cap"] = r.depth_cap;
  j["p"] = r.p;
  j["planned_iterations"] = r.planned_iterations;
  j["iterations"] = r.iterations;
  j["attempts"] = r.attempts;
  j["sampling_rounds"] = r.sampling_rounds;
  j["report_rounds"] = r.report_rounds;
  j["rounds"] = r.rounds;
  if (!r.certificate_sizes.empty())
    j["max_certificate_size"] = *std::max_element(r.certificate_sizes.begin(), r.certificate_sizes.end());
  if (!r.all_witnesses.empty()) j["all_witnesses"] = r.all_witnesses;
  return j;
}

nlohmann::ordered_json to_json(const RoundReport& r) { return nlohmann::ordered_json::parse(export_summary(r)); }

std::string write_report(const Report& report, const std::string& dir, const std::string& stem) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / (stem + ".json");
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << report.dump();

  const auto now = std::chrono::system_clock::now();
  nlohmann::ordered_json side;
  side["report"] = path.filename().string();
  side["unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
  std::ofstream(fs::path(dir) / (stem + ".time.json")) << side.dump() << "\n";
  return path.string();
}

}  // namespace ftcut
