#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axitherm/carnot/engine.hpp"

namespace axitherm {

struct TauMeasurement {
  double tau = 0.0;
  EngineRun run;
};

/// tau(R1, R2) = -Q1 / Q2 from a reversible cycle oriented so Q2 < 0.
/// Measuring a reservoir against itself uses an independent copy for R2.
/// Throws EngineError("trivial setting excluded") if both heats vanish.
TauMeasurement measure(const Reservoir& r1, const Reservoir& r2, const MachineConfig& config = {});

double measure_tau(const Reservoir& r1, const Reservoir& r2, const MachineConfig& config = {});

/// |tau(R1, R2) - 1| < tol.
bool in_equilibrium(const Reservoir& r1, const Reservoir& r2, double tol = 1e-9, const MachineConfig& config = {});

/// Measured ratios keyed by reservoir labels, each with the run it came from.
class TauTable {
 public:
  struct Entry {
    double tau;
    EngineRun run;
  };

  void insert(const std::string& first, const std::string& second, TauMeasurement m);
  std::optional<double> find(const std::string& first, const std::string& second) const;
  const std::map<std::pair<std::string, std::string>, Entry>& entries() const { return entries_; }

 private:
  std::map<std::pair<std::string, std::string>, Entry> entries_;
};

/// Every ordered pair of the given reservoirs.
TauTable measure_all(const std::vector<Reservoir>& reservoirs, const MachineConfig& config = {});

struct TemperatureAssignment {
  std::string reference;
  double t_ref = 0.0;
  std::map<std::string, double> temps;
};

/// T = tau(R, R_ref) * T_ref for each reservoir; the reference itself gets
/// T_ref exactly. Throws std::invalid_argument unless T_ref > 0.
TemperatureAssignment assign_temperatures(const std::vector<Reservoir>& reservoirs, const Reservoir& ref,
                                          double t_ref, const MachineConfig& config = {});

}  // namespace axitherm
