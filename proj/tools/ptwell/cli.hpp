#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptwell::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSolverFailure = 2, kVerificationFailure = 3 };

struct RunConfig {
  std::string command;
  double coupling = 0.0;
  int levels = 6;
  int index = 0;
  int depth = 3;
  std::string plan;
  int samples = 201;
  std::string format = "json";
  std::string output;
  double tol = 1e-6;
  int member = 1;
  int m = 1;
  int n = 0;
};

/// Parses `args` (without the program name), runs the command and returns
/// the process exit code.  Results go to `out` unless --output is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptwell::cli
