#include "axitherm/carnot/tau.hpp"

#include <cmath>

namespace axitherm {

TauMeasurement measure(const Reservoir& r1, const Reservoir& r2, const MachineConfig& config) {
  const Reservoir other = r1.leaf() == r2.leaf() ? r2.fresh_copy(r2.label() + "'").with_energy(r2.energy()) : r2;
  EngineRun run = build_carnot_cycle(config, r1, other);
  if (run.q1 == Energy(0.0) && run.q2 == Energy(0.0)) throw EngineError("trivial setting excluded");
  if (run.q2 > Energy(0.0)) run = reverse_run(run);
  const double tau = -run.q1.value() / run.q2.value();
  return TauMeasurement{tau, std::move(run)};
}

double measure_tau(const Reservoir& r1, const Reservoir& r2, const MachineConfig& config) {
  return measure(r1, r2, config).tau;
}

bool in_equilibrium(const Reservoir& r1, const Reservoir& r2, double tol, const MachineConfig& config) {
  if (!(tol > 0.0)) throw std::invalid_argument("equilibrium tolerance must be positive");
  return std::fabs(measure_tau(r1, r2, config) - 1.0) < tol;
}

void TauTable::insert(const std::string& first, const std::string& second, TauMeasurement m) {
  if (!(m.tau > 0.0)) throw EngineError("tau must be positive");
  entries_.insert_or_assign({first, second}, Entry{m.tau, std::move(m.run)});
}

std::optional<double> TauTable::find(const std::string& first, const std::string& second) const {
  const auto it = entries_.find({first, second});
  if (it == entries_.end()) return std::nullopt;
  return it->second.tau;
}

TauTable measure_all(const std::vector<Reservoir>& reservoirs, const MachineConfig& config) {
  TauTable table;
  for (const auto& a : reservoirs) {
    for (const auto& b : reservoirs) table.insert(a.label(), b.label(), measure(a, b, config));
  }
  return table;
}

TemperatureAssignment assign_temperatures(const std::vector<Reservoir>& reservoirs, const Reservoir& ref,
                                          double t_ref, const MachineConfig& config) {
  if (!(t_ref > 0.0) || !std::isfinite(t_ref)) throw std::invalid_argument("reference temperature must be positive");
  TemperatureAssignment out{ref.label(), t_ref, {}};
  for (const auto& r : reservoirs) {
    const double t = r.leaf() == ref.leaf() ? t_ref : measure_tau(r, ref, config) * t_ref;
    out.temps.insert_or_assign(r.label(), t);
  }
  out.temps.insert_or_assign(ref.label(), t_ref);
  return out;
}

}  // namespace axitherm
