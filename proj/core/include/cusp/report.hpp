#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace cusp {

inline constexpr const char* kReportSchema = "cusp-resolve/1";

enum class Command { Resolve, Separatrix, Topology, CheckTrace, ClassifyLinear };

std::string command_name(Command c);
/// Throws ContractViolation on an unknown name.
Command command_from_name(const std::string& name);

struct RunConfig {
  Command command = Command::Resolve;
  int p = 0;
  int q = 0;
  int k = 0;
  int d = 0;  ///< separatrix command
  std::string h = "1";
  std::string h0;      ///< check-trace
  std::string matrix;  ///< classify-linear, JSON array of rows
  int truncation = 16;
  bool all_charts = false;
  std::string out;
  std::string dot;

  /// Throws ContractViolation when a required parameter is missing or N < 8.
  void validate() const;
};

/// Keys as in the CLI flags ("p", "q", "k", "d", "h", "h0", "matrix",
/// "truncation", "all_charts", "out", "dot", "command").
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Reads a JSON config file; ParseError carries the line and column.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

struct Warning {
  std::string code;
  std::string subject;
  std::string message;
  friend bool operator==(const Warning&, const Warning&) = default;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitExcluded = 2, kExitNotReduced = 3 };

struct Report {
  std::string schema = kReportSchema;
  std::string command;
  std::string status;  ///< "REDUCED", "NOT-REDUCED", "EXCLUDED-TRACE", "OK", "ERROR"
  int exit_code = kExitOk;
  nlohmann::json input;
  nlohmann::json schedule;
  nlohmann::json stages;
  nlohmann::json charts;
  nlohmann::json divisor_graph;
  nlohmann::json singular_lines;
  nlohmann::json singular_points;
  nlohmann::json separatrix;
  nlohmann::json presentations;
  nlohmann::json holonomy;
  nlohmann::json trace;
  nlohmann::json linear;
  std::string error;
  std::vector<Warning> warnings;
  friend bool operator==(const Report&, const Report&) = default;
};

void to_json(nlohmann::json& j, const Warning& w);
void from_json(const nlohmann::json& j, Warning& w);
void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string serialize(const Report& r);

struct RunResult {
  Report report;
  std::string dot;  ///< divisor graph, when one was built
};

/// Runs the pipeline for one command. Never throws for engine errors; they
/// become status "ERROR" (exit 1), an excluded trace (exit 2) or an
/// unreduced model (exit 3).
RunResult run(const RunConfig& config);

}  // namespace cusp
