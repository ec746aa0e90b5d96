#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "wiretap/channels.hpp"
#include "wiretap/feedback_sim.hpp"
#include "wiretap/lattice.hpp"
#include "wiretap/secrecy_rates.hpp"

#include "json.hpp"

namespace wiretap {

inline constexpr const char* kToolVersion = "wiretap 1.0.0";

/// Reproducibility record embedded in every emitted report; rerunning the
/// same command and seed reproduces everything but the timestamp.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // ISO-8601 UTC

  nlohmann::json to_json() const;
};

std::string iso8601_utc_now();

/// Rounds to 12 significant digits; applied to every float that reaches an
/// output file so reports are stable across platforms.
double sig12(double v);

/// Channel spec from JSON: either {"alphabets": {...}, "noise": {...}} or the
/// shorthand {"bsc": {"eps": e, "delta": d, "correlation": "..."}}.
ModAddChannelSpec parse_channel_spec(const nlohmann::json& j);

/// {"m": 1, "g": [[...]], "sigma0_sq": ., "sigma1_sq": ., "sigma2_sq": .}
LatticeSpec parse_lattice_spec(const nlohmann::json& j);

/// Simulation config JSON; "channel" or "lattice" nested per scheme.
SimConfig parse_sim_config(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

/// Writes via a temp file in the same directory plus rename, so readers never
/// observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

nlohmann::json rate_report_to_json(const RateReport& report);
nlohmann::json sim_report_to_json(const SimReport& report);

/// Header + one row per report, matching the documented column order.
std::string sim_reports_to_csv(const std::vector<std::pair<SimConfig, SimReport>>& rows);

}  // namespace wiretap
