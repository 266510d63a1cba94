#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "optconv/error.hpp"

namespace optconv::cli {

/// Bad command line; the front end exits with status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// `--help` was requested; carries the help text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

enum class Verb { bound, recover, certify, sharpness, cvd_check, convolve };
enum class Format { text, json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct Command {
  Verb verb = Verb::bound;
  std::vector<std::string> kernel_specs;
  int s = 1;
  std::size_t grid = 16384;
  std::vector<std::string> psi_specs;
  int trials = 200;
  std::uint64_t seed = 1;
  std::vector<double> widths;
  int order = 8;  ///< output order for `convolve`
  int threads = 1;
  double perturb_alpha = 0.0;
  std::optional<std::string> output;  ///< path; standard output when empty
  Format format = Format::text;
};

/// Parses argv (without the program name). Throws UsageError or HelpRequested.
Command parse(const std::vector<std::string>& args);

/// Runs the command, writing the report to `out` (or the --output file) and
/// diagnostics to `err`. Returns 0, 1 (bound violation, failed check, inconsistent
/// interpolation) or 2 (usage).
int execute(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse + execute with exit-status mapping; the body of main().
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optconv::cli
