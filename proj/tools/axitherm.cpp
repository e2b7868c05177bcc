// Batch front end: validate scenario files, run checks, derive temperatures.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "axitherm/cli/pipeline.hpp"
#include "axitherm/cli/scenario.hpp"

namespace fs = std::filesystem;
using namespace axitherm::cli;

namespace {

constexpr int kInputError = 2;

struct Args {
  std::string scenario;
  std::string only;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::optional<double> tolerance;
  std::optional<std::size_t> steps;
  std::string anchor;
  std::string output;
  bool reveal_hidden = false;
  bool lax = false;
};

// Relative paths that do not exist here are looked up in $AXITHERM_CONFIG_DIR.
fs::path resolve(const std::string& name) {
  const fs::path p(name);
  if (p.is_absolute() || fs::exists(p)) return p;
  if (const char* dir = std::getenv("AXITHERM_CONFIG_DIR")) {
    const fs::path alt = fs::path(dir) / p;
    if (fs::exists(alt)) return alt;
  }
  return p;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void add_common(CLI::App* cmd, Args& a, bool full) {
  cmd->add_option("scenario", a.scenario, "scenario file (JSON, schema 1)")->required();
  cmd->add_flag("--lax", a.lax, "warn about unknown fields instead of rejecting them");
  if (!full) return;
  cmd->add_option("--seed", a.seed, "override the scenario seed");
  cmd->add_option("--format", a.format, "output format")->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--tolerance", a.tolerance, "relative tolerance of law checks")->check(CLI::PositiveNumber);
  cmd->add_option("--steps", a.steps, "Simpson panels per quadrature (even)");
  cmd->add_option("--anchor", a.anchor, "temperature anchor, ref=NAME,T=VALUE");
  cmd->add_option("-o,--output", a.output, "write the report here instead of stdout");
  cmd->add_flag("--reveal-hidden", a.reveal_hidden, "include hidden reservoir scales (testing only)");
}

int execute(Mode mode, const Args& a) {
  const Parsed parsed = load_scenario(resolve(a.scenario), !a.lax);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";

  RunOptions opts;
  opts.mode = mode;
  opts.only = split(a.only);
  opts.seed = a.seed;
  opts.tolerance = a.tolerance;
  if (a.steps) {
    if (*a.steps < 2 || *a.steps % 2 != 0) throw ScenarioError("--steps", "must be even and at least 2");
    opts.steps = a.steps;
  }
  if (!a.anchor.empty()) opts.anchor = parse_anchor(a.anchor);
  opts.reveal_hidden = a.reveal_hidden;

  const RunResult result = run(parsed.scenario, opts);
  const std::string body = a.format == "machine" ? machine_text(result.report) : result.text;
  if (a.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(a.output, std::ios::binary);
    if (!out) throw ScenarioError("--output", "cannot write " + a.output);
    out << body;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axiomatic thermodynamics checker"};
  app.require_subcommand(1);

  Args args;
  auto* check = app.add_subcommand("check", "run the scenario's law checks");
  add_common(check, args, true);
  check->add_option("--only", args.only, "comma-separated check ids");
  auto* derive = app.add_subcommand("derive-temp", "measure tau ratios and assign temperatures");
  add_common(derive, args, true);
  auto* report = app.add_subcommand("report", "tau table, temperatures, engines and all checks");
  add_common(report, args, true);
  report->add_option("--only", args.only, "comma-separated check ids");
  auto* validate = app.add_subcommand("validate", "check a scenario file against the schema");
  add_common(validate, args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*validate) {
      const Parsed parsed = load_scenario(resolve(args.scenario), !args.lax);
      for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "ok: " << parsed.scenario.reservoirs.size() << " reservoirs, " << parsed.scenario.gases.size()
                << " gases, " << parsed.scenario.engines.size() << " engines, " << parsed.scenario.checks.size()
                << " checks\n";
      return 0;
    }
    if (*check) return execute(Mode::check, args);
    if (*derive) return execute(Mode::derive_temp, args);
    return execute(Mode::report, args);
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
