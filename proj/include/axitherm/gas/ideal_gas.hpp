#pragma once

#include <cstddef>
#include <string>

#include "axitherm/core/process.hpp"
#include "axitherm/gas/spec.hpp"
#include "axitherm/reservoir/reservoir.hpp"

namespace axitherm {

class GasError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  std::size_t panels = 10000;
};

/// A gas system instance: its leaf and constitutive spec.
struct Gas {
  Leaf leaf;
  GasSpec spec;

  SystemId system() const { return SystemId(leaf); }
};

Gas make_gas(std::string label, const GasSpec& spec);

/// Throws GasError unless p > 0 and V > 0.
void validate(const GasState& state);

/// Gas state on the isotherm p V = pv at volume v.
GasState on_isotherm(Energy pv, Volume v);

// Plain state maps with their work and heat, no ledger.

struct IsothermalResult {
  GasState out;
  Energy work;              // Simpson quadrature of -p dV
  Energy work_closed_form;  // -pV ln(V_out / V_in)
  Energy heat;              // dU - W
};

/// Quasi-static isothermal volume change. Throws GasError for V_out <= 0.
IsothermalResult isothermal_step(const GasSpec& spec, const GasState& in, Volume v_out,
                                 const QuadratureOptions& quad = {});

struct AdiabaticResult {
  GasState out;
  Energy work;             // dU, the work-process identity
  Energy work_quadrature;  // Simpson quadrature of -p dV along the adiabat
};

/// Quasi-static volume change of the isolated gas. Throws GasError for V_out <= 0.
AdiabaticResult adiabatic_step(const GasSpec& spec, const GasState& in, Volume v_out,
                               const QuadratureOptions& quad = {});

/// Friction at constant volume: U rises by w. Throws GasError("friction cannot
/// extract work") for w <= 0.
GasState friction_step(const GasSpec& spec, const GasState& in, Energy w);

struct ContactResult {
  GasState out;
  Energy heat_to_gas;
};

/// Instantaneous relaxation onto the reservoir's isotherm at fixed volume.
ContactResult thermal_contact(const GasSpec& spec, const GasState& in, const Reservoir& reservoir);

// Ledger-producing segment builders.

struct GasSegment {
  Segment segment;
  GasState gas;
};

struct ContactSegment {
  Segment segment;
  GasState gas;
  Reservoir reservoir;
};

/// Quasi-static volume change while held by the reservoir. The gas must
/// already sit on the reservoir's current isotherm (relative 1e-9), else
/// GasError. For a finite tank the path is p V^(1+k) = const and the tank's
/// energy drifts with the heat it supplies.
ContactSegment isothermal_segment(const Gas& gas, const GasState& in, const Reservoir& reservoir, Volume v_out,
                                  const QuadratureOptions& quad = {});

GasSegment adiabatic_segment(const Gas& gas, const GasState& in, Volume v_out, const QuadratureOptions& quad = {});

GasSegment friction_segment(const Gas& gas, const GasState& in, Energy w);

/// Reversible only when the gas was already on the isotherm.
ContactSegment contact_segment(const Gas& gas, const GasState& in, const Reservoir& reservoir);

/// Ledger entry skeleton for a gas leaf at `state`.
LedgerEntry gas_entry(const Gas& gas, const GasState& state);

}  // namespace axitherm
