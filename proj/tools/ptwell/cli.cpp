#include "ptwell/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "ptwell/commands.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/hierarchy.hpp"

namespace ptwell::cli {

namespace {

Json error_json(const char* kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  return j;
}

int emit(const CommandResult& result, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string text = result.csv.empty() ? to_json_text(result.json) : result.csv;
  if (cfg.output.empty()) {
    out << text;
    return result.exit_code;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) {
    err << "cannot open " << cfg.output << " for writing\n";
    return kUsage;
  }
  file << text;
  return result.exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectra and SUSY hierarchies of the PT-symmetric square well", "ptwell"};
  app.require_subcommand(1);

  auto add_output = [&cfg](CLI::App* sub, bool csv) {
    auto* fmt = sub->add_option("--format", cfg.format, "Output format");
    fmt->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "csv"} : std::vector<std::string>{"json"}));
    sub->add_option("--output", cfg.output, "Write to this file instead of stdout");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Real levels and complex pairs");
  spectrum->add_option("--coupling", cfg.coupling, "Coupling Z")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--levels", cfg.levels, "Number of levels")->check(CLI::Range(1, 200));
  add_output(spectrum, false);

  auto* critical = app.add_subcommand("critical", "Coupling at which band nu goes complex");
  critical->add_option("--index", cfg.index, "Band index nu")->check(CLI::Range(0, 50));
  add_output(critical, false);

  auto* hierarchy = app.add_subcommand("hierarchy", "SUSY partner potentials along a plan");
  hierarchy->add_option("--coupling", cfg.coupling, "Coupling Z")->check(CLI::NonNegativeNumber);
  hierarchy->add_option("--depth", cfg.depth, "Number of members")->check(CLI::Range(1, 6));
  hierarchy->add_option("--plan", cfg.plan, "Comma-separated real|clower|cupper");
  hierarchy->add_option("--levels", cfg.levels, "Levels kept by the deepest member")->check(CLI::Range(1, 50));
  hierarchy->add_option("--samples", cfg.samples, "Potential samples per member")->check(CLI::Range(2, 1000000));
  add_output(hierarchy, true);

  auto* verify = app.add_subcommand("verify", "Closed forms against the shooting oracle");
  verify->add_option("--coupling", cfg.coupling, "Coupling Z")->check(CLI::NonNegativeNumber);
  verify->add_option("--member", cfg.member, "Hierarchy member")->check(CLI::Range(1, 4));
  verify->add_option("--plan", cfg.plan, "Comma-separated real|clower|cupper");
  verify->add_option("--levels", cfg.levels, "Number of levels")->check(CLI::Range(1, 20));
  verify->add_option("--tol", cfg.tol, "Energy and mismatch tolerance")->check(CLI::PositiveNumber);
  add_output(verify, false);

  auto* limit = app.add_subcommand("limit", "Z -> 0 shapes and sec^2 potentials");
  limit->add_option("--m", cfg.m, "Member 1..3")->check(CLI::Range(1, 3));
  limit->add_option("--n", cfg.n, "Level")->check(CLI::Range(0, 20));
  add_output(limit, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!cfg.plan.empty()) (void)EliminationPlan::parse(cfg.plan);
    (void)tolerance_scale();
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    CommandResult result;
    if (cfg.command == "spectrum") result = cmd_spectrum(cfg);
    else if (cfg.command == "critical") result = cmd_critical(cfg);
    else if (cfg.command == "hierarchy") result = cmd_hierarchy(cfg);
    else if (cfg.command == "verify") result = cmd_verify(cfg);
    else result = cmd_limit(cfg);
    return emit(result, cfg, out, err);
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    out << to_json_text(error_json("domain", e.what()));
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    out << to_json_text(error_json("solver", e.what()));
    return kSolverFailure;
  }
}

}  // namespace ptwell::cli
