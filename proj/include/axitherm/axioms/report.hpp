#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "axitherm/core/process.hpp"

namespace axitherm {

enum class CheckStatus { pass, fail, skipped };

std::string_view status_name(CheckStatus status);
/// Throws std::invalid_argument for unknown names.
CheckStatus status_from_name(std::string_view name);

/// A residual is ok when value <= tolerance, or value < tolerance if strict.
struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool strict = false;

  bool ok() const { return strict ? value < tolerance : value <= tolerance; }
  friend bool operator==(const Residual&, const Residual&) = default;
};

struct Observation {
  std::string name;
  double value = 0.0;
  friend bool operator==(const Observation&, const Observation&) = default;
};

struct CheckReport {
  std::string check_id;
  CheckStatus status = CheckStatus::skipped;
  std::vector<Residual> residuals;
  std::optional<nlohmann::json> witness;
  std::string note;
  std::vector<Observation> observations;

  bool all_ok() const;
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

/// pass iff every residual is ok; a failing report must carry a witness.
CheckReport finish(CheckReport report, std::optional<nlohmann::json> witness_on_fail);

CheckReport skipped(std::string check_id, std::string reason);

/// One report from several labelled runs of the same check: per residual name
/// the worst margin is kept, observations are prefixed with their label.
/// Fails if any part fails (first failing witness), skipped if all are.
CheckReport combine(std::string check_id, const std::vector<std::pair<std::string, CheckReport>>& parts);

nlohmann::json to_json(const CheckReport& report);
/// Throws nlohmann::json::exception or std::invalid_argument on malformed input.
CheckReport report_from_json(const nlohmann::json& j);

/// Labels, states, works and segment parameters of a process. Systems are
/// named by label only, so the output does not depend on id allocation.
nlohmann::json serialize_process(const Process& p);

}  // namespace axitherm
