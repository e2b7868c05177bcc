#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "axitherm/cli/scenario.hpp"

namespace axitherm::cli {

enum class Mode { check, derive_temp, report };

struct RunOptions {
  Mode mode = Mode::report;
  std::vector<std::string> only;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<std::size_t> steps;
  std::optional<Anchor> anchor;
  bool reveal_hidden = false;
};

struct RunResult {
  nlohmann::json report;
  std::string text;
  int exit_code = 0;  // 0 when no check failed, 1 otherwise
};

/// Runs the requested part of the pipeline on a validated scenario. Bad flag
/// values (unknown --only ids, missing anchor) throw ScenarioError.
RunResult run(const Scenario& scenario, const RunOptions& options);

/// Machine-readable encoding: sorted keys, fixed indentation, trailing newline.
std::string machine_text(const nlohmann::json& report);

}  // namespace axitherm::cli
