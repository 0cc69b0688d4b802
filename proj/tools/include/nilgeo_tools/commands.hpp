#pragma once

#include <string>
#include <vector>

namespace nilgeo::cli {

inline constexpr const char* kToolName = "nilgeo";
inline constexpr const char* kToolVersion = "0.1.0";

struct Command {
  std::string name;  ///< validate, report, curvature, ...
  std::string input;
  std::string catalog;
  std::string lattice;
  std::string builder;
  std::string then;
  double t_start = 0.0;
  double t_end = 5.0;
  double t_step = 0.1;
  double tolerance = 1e-8;
  std::string z0;  ///< comma-separated rationals
  std::string v0;
  std::string x;
  std::string y;
  std::string z;
};

struct RunResult {
  int exit_code = 0;
  std::string artifact;  ///< JSON report or CSV table, newline-terminated
};

/// Exit codes: 0 success or property holds, 1 input/schema error, 2 property
/// fails (witness in the report), 3 inapplicable.
RunResult run(const Command& cmd);

const std::vector<std::string>& command_names();

}  // namespace nilgeo::cli
