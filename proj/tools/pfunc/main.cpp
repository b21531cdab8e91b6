#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "pfunc/error.hpp"
#include "pfunc/registry.hpp"
#include "pfunc/runner.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"pfunc: numerical checks for P-functions of elliptic equations"};
  app.require_subcommand(1);

  std::string configPath;
  std::string outDir = ".";
  auto* run = app.add_subcommand("run", "run every job of a config and write JSON reports");
  run->add_option("config", configPath, "config document (JSON)")->required();
  run->add_option("--out", outDir, "directory for relative report and dump paths");

  app.add_subcommand("list", "list registry cases and checks");

  std::string jobId;
  std::string checkId;
  std::string dumpConfig = "pfunc.json";
  std::string dumpDir;
  auto* dump = app.add_subcommand("dump-field", "write one check's residual field as CSV");
  dump->add_option("job", jobId, "job id")->required();
  dump->add_option("check", checkId, "check id")->required();
  dump->add_option("--out", dumpDir, "output directory")->required();
  dump->add_option("--config", dumpConfig, "config document (default pfunc.json)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list")) {
      std::cout << pfunc::list_registry();
      return 0;
    }
    if (app.got_subcommand("run")) {
      const pfunc::RunConfig cfg = pfunc::load_config(configPath);
      const pfunc::RunSummary sum = pfunc::run(cfg, outDir);
      for (const auto& rep : sum.reports) {
        std::size_t ok = 0;
        for (const auto& c : rep.checks) ok += c.asExpected ? 1 : 0;
        std::cout << (rep.asExpected && !rep.error ? "ok    " : "FAIL  ") << rep.jobId << "  " << ok << "/"
                  << rep.checks.size() << " checks as expected";
        if (rep.error) std::cout << "  (" << *rep.error << ")";
        std::cout << "\n";
        for (const auto& c : rep.checks) {
          if (c.asExpected) continue;
          std::cout << "        " << c.report.checkId << ": expected " << c.expect << ", got "
                    << (c.report.error ? *c.report.error : (c.report.pass ? "pass" : "fail")) << "\n";
        }
      }
      return sum.exitStatus;
    }
    const pfunc::RunConfig cfg = pfunc::load_config(dumpConfig);
    const fs::path path = pfunc::dump_field(cfg, jobId, checkId, dumpDir);
    std::cout << path.string() << "\n";
    return 0;
  } catch (const pfunc::Error& e) {
    std::cerr << "pfunc: " << e.what() << "\n";
    return e.code() == pfunc::ErrorCode::ConfigError ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "pfunc: " << e.what() << "\n";
    return 3;
  }
}
