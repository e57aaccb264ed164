#pragma once

// Scenario files ("rotquad-scenario-v1" JSON), the compute / verify / rep
// commands and their JSON and CSV reports.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotquad/rotation_invariant.hpp"

namespace rotquad::cli {

inline constexpr const char* kScenarioSchema = "rotquad-scenario-v1";
inline constexpr const char* kReportSchema = "rotquad-report-v1";
inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kValidation = 2, kNumerical = 3 };

struct TupleSpec {
  std::vector<std::string> names;  // 4 names, or 5 with a coboundary witness w
  std::optional<std::string> beta;  // named path from x3 to x4
};

struct ScenarioConfig {
  std::string name;
  MapSpec map = MapSpec::identity();
  std::optional<MapSpec> g;
  std::vector<NamedPoint> points;
  std::vector<TupleSpec> tuples;  // empty: every distinct 4-tuple
  std::vector<std::pair<std::string, Polyline>> paths;
  std::vector<Method> methods{Method::Loop, Method::Lift, Method::Trace};
  std::optional<int> period;
  std::vector<std::array<std::string, 3>> blowups;         // (p, x2, x4)
  std::vector<std::array<std::string, 2>> double_blowups;  // (p1, p2)
  BlowupOptions blowup;
  EngineOptions engine;
  nlohmann::ordered_json echo;
};

std::vector<Method> parse_methods(const std::string& text);
SpherePoint parse_point(const nlohmann::json& j);
MapSpec parse_map(const nlohmann::json& j);

/// Validates names, schema and fixedness (NotFixed). Throws rotquad::Error.
ScenarioConfig parse_scenario(const nlohmann::json& j);
ScenarioConfig load_scenario(const std::string& path);

/// Report for `compute`; `exit_code` receives 0, 1 or 3.
nlohmann::ordered_json compute_report(const ScenarioConfig& config, int& exit_code);

/// Report for `verify`; suites: rf-symmetries, theta, f-symmetry, decompose,
/// all. `config` may be absent for the theta suite.
nlohmann::ordered_json verify_report(const std::optional<ScenarioConfig>& config, const std::string& suite,
                                     int& exit_code);

/// CSV (RFC 4180) of the per-tuple values of a compute report.
std::string results_csv(const nlohmann::ordered_json& report);

/// Entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rotquad::cli
