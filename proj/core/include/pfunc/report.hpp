#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfunc/verify.hpp"

namespace pfunc {

inline constexpr const char* kReportSchema = "pfunc-report/1";

struct SolverTelemetry {
  std::string solver;
  int iterations = 0;
  std::vector<double> residualHistory;
  double recheckResidual = 0.0;
};

struct CheckOutcome {
  CheckReport report;
  std::string expect = "pass";
  bool asExpected = false;
};

struct JobReport {
  std::string jobId;
  std::string equation;
  std::string pfunction;
  std::map<std::string, std::string> field;
  std::optional<SolverTelemetry> telemetry;
  std::vector<CheckOutcome> checks;
  std::optional<std::string> error;
  bool asExpected = false;
  double wallTimeMs = 0.0;
};

/// True when the report's outcome matches "pass", "fail", "vacuous",
/// "error" or "error:<Code>".
bool outcome_matches(const CheckReport& report, const std::string& expect);

std::string to_string(CheckKind kind);

/// Pretty-printed JSON; every number printed with 17 significant digits,
/// non-finite numbers as null.
std::string to_json(const CheckReport& report);
std::string to_json(const JobReport& report);

}  // namespace pfunc
