#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace robba::cli {

struct JobRequest {
  std::string command;     // validate | cohomology | residue | nonsingular | verdict | ranks
  std::string input_path;  // "-" reads standard input; unused by ranks
  std::optional<int> window;
  std::optional<int> precision;
  std::uint64_t seed = 0;
  std::string format = "json";
  // ranks
  int g = 2;
  int level = 4;
  std::string oracle = "default";
};

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kWindowLimited = 3 };

struct JobResult {
  int exit_code = kPass;
  std::string report;  // JSON followed by a newline
};

/// Runs one job; never throws. Errors become exit 2 with an error report.
JobResult run(const JobRequest& job);

/// Same, with the input document already loaded (input_path is ignored).
JobResult run_text(const JobRequest& job, const std::string& input);

}  // namespace robba::cli
