#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "resint/pairing.hpp"

namespace resint {

struct Diagnostic {
  int line = 0;  // 0 when not tied to a line
  std::string message;
  std::string to_string(const std::string& path) const;
};

struct GeneratorList {
  std::vector<std::string> gens;
  int line = 0;
};

struct ScenarioCenter {
  std::string name;
  GeneratorList ideal;
  bool total = false;
};

struct ScenarioTower {
  std::string name;
  std::vector<ScenarioCenter> centers;
  int line = 0;
};

struct ScenarioStrata {
  std::string name;
  std::string tower;
  std::vector<std::string> rules;
  std::vector<std::pair<int, GeneratorList>> manual;
  std::vector<std::pair<std::string, GeneratorList>> annotations;
  int line = 0;
};

struct ScenarioCycle {
  std::string name;
  GeneratorList ideal;
  int dim = -1;
  int mult = 1;
};

struct ScenarioFamily {
  std::string name;
  GeneratorList ideal;
  std::string parameter = "l";
  std::vector<std::string> marked;
  int dim = -1;
};

struct ScenarioTask {
  std::string verb;
  std::vector<std::string> args;
  std::map<std::string, std::string> options;
  int line = 0;
  std::string text;
};

struct Scenario {
  std::string path;
  std::vector<std::string> vars;
  int vars_line = 0;
  std::string kind = "affine";
  GeneratorList relations;
  std::vector<ScenarioTower> towers;
  std::vector<ScenarioStrata> strata;
  std::vector<ScenarioCycle> cycles;
  std::vector<ScenarioFamily> families;
  std::vector<ScenarioTask> tasks;
};

// Grammar errors are appended to `diags`; the returned scenario holds whatever parsed.
Scenario parse_scenario(const std::string& text, const std::string& path, std::vector<Diagnostic>& diags);
Scenario load_scenario(const std::string& path, std::vector<Diagnostic>& diags);
ScenarioTask parse_task(const std::string& line, int line_no, std::vector<Diagnostic>& diags);

// Grammar, reference and invariant checks; no Groebner computations.
std::vector<Diagnostic> validate_scenario(const Scenario& s);

struct RunOptions {
  PairingOptions pairing;
  std::optional<std::size_t> budget;
};

struct TaskResult {
  std::string name;
  std::string status;  // "ok" or "error:<kind>"
  std::string summary;
  nlohmann::ordered_json payload;
  EngineCounters counters;
  double timing_ms = 0;
};

struct RunReport {
  std::string scenario;
  std::vector<TaskResult> tasks;
  std::vector<Diagnostic> diagnostics;
  int exit_code = 0;

  nlohmann::ordered_json to_json(bool with_timing = true) const;
  std::string to_text() const;
};

extern const char* const kReportVersion;

// Validates first; runs the tasks only when no diagnostics were produced.
RunReport run_scenario(const Scenario& s, const RunOptions& opt = {});

}  // namespace resint
