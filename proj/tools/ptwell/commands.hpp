#pragma once

#include <string>

#include "ptwell/cli.hpp"
#include "ptwell/json_writer.hpp"

namespace ptwell::cli {

struct CommandResult {
  Json json;
  std::string csv;  // set only when cfg.format == "csv"
  int exit_code = kOk;
};

CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_critical(const RunConfig& cfg);
CommandResult cmd_hierarchy(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_limit(const RunConfig& cfg);

/// PTWELL_TOL_OVERRIDE, a positive factor applied to every tolerance; 1 when unset.
double tolerance_scale();

}  // namespace ptwell::cli
