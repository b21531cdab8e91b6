#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfunc/registry.hpp"
#include "pfunc/report.hpp"
#include "pfunc/solver.hpp"

namespace pfunc {

struct CheckRequest {
  std::string id;
  std::optional<double> tol;
  std::string expect = "pass";
  std::map<std::string, double> params;
  std::optional<std::string> mode;  ///< liouville: "gamma_zero", "grad_p", "nonexistence"
};

struct JobConfig {
  std::string jobId;
  std::string equation;   ///< registry case id
  std::string pfunction;  ///< registry case id supplying P; defaults to `equation`
  FieldSource field;      ///< case default with config overrides applied
  NewtonOpts solver;
  std::vector<CheckRequest> checks;
  std::string reportPath;  ///< default "<jobId>.json"
  std::optional<std::string> fieldDumpDir;
};

struct RunConfig {
  std::vector<JobConfig> jobs;
};

/// Parses and validates a config document. Throws ConfigError naming the
/// line (for syntax errors) or the field path.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// u for a job: a grid field or a one-dimensional profile.
struct Materialized {
  std::variant<Field2, Profile1> u;
  std::optional<SolverTelemetry> telemetry;
};
Materialized materialize(const JobConfig& job);

/// Runs one check against an already materialized field. Errors are
/// recorded in the returned report.
CheckReport run_check(const JobConfig& job, const CheckRequest& req, const Materialized* field);

/// Runs every check of the job; never throws for check or field failures.
JobReport run_job(const JobConfig& job);

struct RunSummary {
  std::vector<JobReport> reports;
  std::vector<std::filesystem::path> written;
  int exitStatus = 0;
};

/// Runs jobs in order, writing each report (and field dumps) under `outDir`
/// when paths are relative. Exit status is 0 iff every check matched its
/// expectation and no job failed outright.
RunSummary run(const RunConfig& config, const std::filesystem::path& outDir);

/// Runs the job and writes the named check's residual field as CSV into
/// `outDir`; returns the written path. Throws UnknownId, BadParams.
std::filesystem::path dump_field(const RunConfig& config, const std::string& jobId, const std::string& checkId,
                                 const std::filesystem::path& outDir);

}  // namespace pfunc
