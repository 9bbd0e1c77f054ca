#pragma once

// Benchmark runner: argument parsing, single runs with CSV/plot output,
// the vortex error tables and the example suite.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specshock/integrate.hpp"
#include "specshock/reference.hpp"

namespace specshock {

enum class RunMode { single, table, suite };

struct RunRequest {
  RunMode mode = RunMode::single;
  int example = 0;
  std::string variant;
  std::optional<int> n, ny, w;
  std::optional<double> ratio, dt, cfl, t_final, threshold;
  std::optional<double> kappa, epsilon, eta;
  std::optional<FilterDomain> filter_domain;
  bool filter_enabled = true;
  bool postprocess = true;
  Admissibility admissibility = Admissibility::strict;
  int table = 0;
  std::vector<int> suite;
  std::string out = "specshock_out";
  bool emit_plots = false;
  int output_every = 1;
};

struct ParseResult {
  std::optional<RunRequest> request;
  int exit_code = 0;    ///< meaningful when request is empty
  std::string message;  ///< usage / help / error text
};

/// Exit code 2 on usage errors (unknown flag, bad value, --dt with --cfl,
/// missing example); 0 with help text on --help.
ParseResult parse_args(int argc, const char* const* argv);

/// Problem and solver settings for a request (defaults plus overrides).
ProblemSpec make_problem_spec(const RunRequest& req);
SimulationConfig make_config(const RunRequest& req);

/// Reference solution of the monitored variable, when one exists.
std::optional<Field> reference_field(const Problem& problem, double t);

/// Writes fields.csv, diagnostics.csv, errors.csv (when a reference exists)
/// and optionally plot scripts. Returns 0, 1 on solver abort, 3 on IO error.
int run_benchmark(const RunRequest& req, std::ostream& log);

/// Example 11 error tables (1: N = 32/64/128 at t = 2; 2: N = 64 at t = 100..1000).
int run_table(const RunRequest& req, std::ostream& log);

struct SuiteRow {
  int example = 0;
  std::string variant;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the examples one after another and checks each against its gate.
std::vector<SuiteRow> run_suite(const RunRequest& req, std::ostream& log);
void print_suite(const std::vector<SuiteRow>& rows, std::ostream& os);

/// Entry point used by the executable.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// CSV number formatting with 17 significant digits.
std::string csv_number(double v);

}  // namespace specshock
