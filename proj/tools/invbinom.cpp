// Command-line front end: verify suites, evaluate single expressions, list
// what is available.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "invbinom/closedform.hpp"
#include "invbinom/harness.hpp"

namespace {

using namespace invbinom;

int verify(const std::string& suite, const std::string& grid_file, double tol,
           const std::string& report_path, const std::string& format, bool no_timing,
           unsigned threads) {
  harness::SuiteConfig config;
  config.suite = suite;
  if (!grid_file.empty()) config.grid = harness::read_grid_file(grid_file);
  if (tol > 0) config.tol = tol;
  config.format = format == "csv" ? harness::Format::csv : harness::Format::json;
  config.timing = !no_timing;
  config.threads = threads;

  const auto report = harness::run_suite(config);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";

  const std::string text =
      config.format == harness::Format::csv ? harness::to_csv(report) : harness::to_json(report);
  if (report_path.empty()) {
    for (const auto& r : report.records) {
      if (r.passed) continue;
      std::cerr << "FAIL " << r.identity << " @ " << harness::format_complex(r.param) << "  ";
      if (r.error.empty())
        std::cerr << "abs_diff " << r.abs_diff << " > tol " << r.tol << "\n";
      else
        std::cerr << r.error << "\n";
    }
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw Error(Errc::config_invalid, "cannot write report '" + report_path + "'");
    out << text;
  }
  std::cout << report.suite << ": " << report.passed() << "/" << report.records.size()
            << " passed, " << report.errors() << " errors, max abs_diff " << report.max_abs_diff()
            << "\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of inverse binomial series identities"};
  app.require_subcommand(1);

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite, grid_file, report_path, format = "json";
  double tol = 0.0;
  bool no_timing = false;
  unsigned threads = 0;
  verify_cmd->add_option("--suite", suite, "Suite name or 'all'")->required();
  verify_cmd->add_option("--grid-file", grid_file, "One complex literal per line");
  verify_cmd->add_option("--tol", tol, "Override every tolerance")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--report", report_path, "Write the report to this file");
  verify_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_flag("--no-timing", no_timing, "Zero wall times and omit the timestamp");
  verify_cmd->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate one expression");
  std::string kind;
  std::vector<std::string> eval_args;
  bool json = false;
  eval_cmd->add_option("kind", kind, "series, gpl, mpl or closed")
      ->required()
      ->check(CLI::IsMember({"series", "gpl", "mpl", "closed"}));
  eval_cmd->add_option("args", eval_args, "key=value arguments");
  eval_cmd->add_flag("--json", json, "Machine-readable output");

  auto* list_cmd = app.add_subcommand("list", "List suites or identities");
  std::string what;
  list_cmd->add_option("what", what, "suites or identities")
      ->required()
      ->check(CLI::IsMember({"suites", "identities"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify_cmd)
      return verify(suite, grid_file, tol, report_path, format, no_timing, threads);
    if (*eval_cmd) {
      std::cout << harness::format_eval(harness::eval_command(kind, eval_args), json);
      return 0;
    }
    if (what == "suites") {
      for (auto name : harness::suite_names()) std::cout << name << "\n";
    } else {
      for (const auto& entry : closedform::catalog())
        std::cout << entry.name << "\t" << entry.domain << "\ttol " << entry.tol << "\n";
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
