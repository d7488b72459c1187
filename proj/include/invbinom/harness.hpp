#pragma once

// Verification suites over parameter grids, single-expression evaluation for
// the command line, and JSON/CSV reports.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invbinom/error.hpp"
#include "invbinom/numkit.hpp"

namespace invbinom::harness {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct VerificationRecord {
  std::string identity;
  Complex param{};
  Complex lhs{};
  Complex rhs{};
  double abs_diff = 0.0;
  double tol = 0.0;
  bool passed = false;
  std::string lhs_method;
  std::string rhs_method;
  double wall_time_ms = 0.0;
  std::string error;  // empty unless the evaluation threw
};

enum class Format { json, csv };

struct SuiteConfig {
  std::string suite = "all";
  std::optional<std::vector<Complex>> grid;  // replaces the default grids
  std::optional<double> tol;                 // replaces every per-identity tolerance
  Format format = Format::json;
  bool timing = true;     // false zeroes wall times and drops the timestamp
  unsigned threads = 0;   // 0 picks the hardware concurrency
};

struct Report {
  std::string suite;
  std::string timestamp;  // ISO 8601 UTC, empty when timing is off
  std::vector<VerificationRecord> records;
  std::vector<std::string> warnings;

  std::size_t passed() const;
  std::size_t errors() const;
  double max_abs_diff() const;
  /// 0 when every record passed, 1 otherwise.
  int exit_code() const;
};

std::span<const std::string_view> suite_names();

/// Identity tags run by a suite; "integral-reps" yields the representation
/// tags prefixed with "REP_".
std::vector<std::string> suite_members(std::string_view suite);

/// Throws CONFIG_INVALID for an unknown suite, a non-positive tolerance or a
/// grid point outside some member identity's domain.
Report run_suite(const SuiteConfig& config);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);

/// "a+bi" literals with either part optional: "0.5", "1.5i", "-0.3+0.2i",
/// "i", "-i", "1e-3-2e-2i". Throws PARSE.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

/// One complex literal per line; blank lines and text after '#' are ignored.
std::vector<Complex> read_grid_file(const std::string& path);

/// Evaluates `series`, `gpl`, `mpl` or `closed` from key=value arguments:
///   series family=C3 r=1 seq=one_over_k [weight=PLAIN] z=0.5 [boundary=1] [tol=1e-12]
///   gpl letters=0,0 z=2.718281828 [tol=...]
///   mpl depths=2,1 args=1,-1 [tol=...]
///   closed id=THM12 x=-2
/// Throws PARSE for unknown kinds, keys or tags.
numkit::EvalResult eval_command(std::string_view kind, std::span<const std::string> args);

std::string format_eval(const numkit::EvalResult& result, bool json);

}  // namespace invbinom::harness
