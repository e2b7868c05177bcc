#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "axitherm/gas/spec.hpp"
#include "axitherm/reservoir/reservoir.hpp"

namespace axitherm::cli {

/// Malformed scenario input. `path` is a JSON pointer to the offending field.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct GasDecl {
  std::string name;
  GasSpec spec;
};

struct ReservoirDecl {
  std::string name;
  ReservoirModel model = ReservoirModel::ideal;
  double theta = 0.0;
  std::optional<double> heat_capacity;
  std::optional<EnergyWindow> window;
};

struct EngineDecl {
  std::string name;
  std::string gas;
  std::string hot;
  std::string cold;
  double v_a = 0.0;
  double v_b = 0.0;
  std::optional<double> loss_fraction;
};

struct CheckDecl {
  std::string id;
  nlohmann::json params = nlohmann::json::object();
};

struct Anchor {
  std::string reservoir;
  double t_ref = 0.0;
};

/// Gas and volumes used for tau measurements.
struct MachineDecl {
  std::optional<std::string> gas;
  double v_a = 0.01;
  double v_b = 0.02;
};

struct Scenario {
  int schema = 1;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::size_t steps = 10000;
  MachineDecl machine;
  std::vector<GasDecl> gases;
  std::vector<ReservoirDecl> reservoirs;
  std::vector<EngineDecl> engines;
  std::vector<CheckDecl> checks;
  std::optional<Anchor> anchor;

  const GasDecl* find_gas(const std::string& name) const;
  const ReservoirDecl* find_reservoir(const std::string& name) const;
  const EngineDecl* find_engine(const std::string& name) const;
};

/// Known check ids, sorted.
const std::vector<std::string>& check_ids();

struct Parsed {
  Scenario scenario;
  std::vector<std::string> warnings;
};

/// Validates a scenario tree. Unknown fields are errors when strict, else
/// warnings. Throws ScenarioError.
Parsed parse_scenario(const nlohmann::json& doc, bool strict = true);

/// Reads and validates a scenario file. JSON syntax errors are reported with
/// their line and column. Throws ScenarioError.
Parsed load_scenario(const std::filesystem::path& path, bool strict = true);

/// Parses "ref=NAME,T=VALUE". Throws ScenarioError.
Anchor parse_anchor(const std::string& text);

}  // namespace axitherm::cli
