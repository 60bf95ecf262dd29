#pragma once

// Command-line front end. Exit codes:
//   0  success / instance is string / values agree
//   1  negative outcome: not string, a sweep found a nonzero genus, or the
//      oracle disagrees with the exact value
//   2  malformed input (bad file, bad flags, degenerate instance)
//   3  precondition violated (wrong dimension, string-ness undecided, ...)
//   4  numeric convergence failure

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "stringci/geometry.hpp"

namespace stringci::cli {

enum ExitCode : int {
  kOk = 0,
  kFalse = 1,
  kInputError = 2,
  kPreconditionError = 3,
  kConvergenceError = 4,
};

struct Instance {
  CompleteIntersection ci;
  std::string label;
};

/// JSON document {"n": [...], "D": [[...], ...], "label": "..."}; D may be
/// omitted for t = 0. Throws InvalidInstanceError.
Instance parse_instance_json(const std::string& text);
/// Inline form "n=[7,4];D=[[2,1],[1,-2]]" (n may be a bare integer).
Instance parse_inline(const std::string& text);
Instance load_instance_file(const std::string& path);

/// "0.1", "0.1+0.05i", "-0.2i", ...
std::complex<double> parse_complex(const std::string& text);

/// Thread count from STRINGCI_THREADS, else hardware concurrency.
int default_threads();

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stringci::cli
