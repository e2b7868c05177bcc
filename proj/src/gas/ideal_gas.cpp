#include "axitherm/gas/ideal_gas.hpp"

#include <cmath>

#include "axitherm/simd/quadrature.hpp"

namespace axitherm {

GasSpec::GasSpec(double moles, double molar_cv) : moles_(moles), molar_cv_(molar_cv) {
  if (!(moles > 0.0) || !std::isfinite(moles)) throw std::invalid_argument("gas amount must be positive");
  if (!(molar_cv > 0.0) || !std::isfinite(molar_cv)) {
    throw std::invalid_argument("molar heat capacity must be positive");
  }
}

GasSpec GasSpec::monatomic(double moles) { return GasSpec(moles, 1.5 * kGasConstant); }

GasSpec GasSpec::diatomic(double moles) { return GasSpec(moles, 2.5 * kGasConstant); }

GasSpec GasSpec::from_gamma(double moles, double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("heat capacity ratio must exceed 1");
  return GasSpec(moles, kGasConstant / (gamma - 1.0));
}

Energy internal_energy(const GasSpec& spec, const GasState& state) {
  return Energy(spec.molar_cv() * state.p.value() * state.v.value() / kGasConstant);
}

Gas make_gas(std::string label, const GasSpec& spec) { return Gas{make_leaf(SystemKind::gas, std::move(label)), spec}; }

void validate(const GasState& state) {
  if (!(state.p > Pressure(0.0)) || !std::isfinite(state.p.value())) throw GasError("gas pressure must be positive");
  if (!(state.v > Volume(0.0)) || !std::isfinite(state.v.value())) throw GasError("gas volume must be positive");
}

GasState on_isotherm(Energy pv, Volume v) { return GasState{pv / v, v}; }

namespace {

void check_target(Volume v_out) {
  if (!(v_out > Volume(0.0)) || !std::isfinite(v_out.value())) throw GasError("target volume must be positive");
}

struct PathResult {
  GasState out;
  Energy work;
  Energy work_closed_form;
};

// Quasi-static path p V^(1+k) = const from `in` to v_out; k = 0 is the isotherm.
PathResult contact_path(const GasState& in, Volume v_out, double k, const QuadratureOptions& quad) {
  validate(in);
  check_target(v_out);
  if (v_out == in.v) return PathResult{in, Energy(0.0), Energy(0.0)};
  const Energy pv = in.p * in.v;
  const double ratio = v_out / in.v;
  const Energy pv_out = k == 0.0 ? pv : pv * std::pow(ratio, -k);
  const double integral = simd::simpson_power(1.0, ratio, 1.0 + k, quad.panels);
  const double exact = k == 0.0 ? std::log(ratio) : -std::expm1(-k * std::log(ratio)) / k;
  return PathResult{GasState{pv_out / v_out, v_out}, -pv * integral, -pv * exact};
}

}  // namespace

IsothermalResult isothermal_step(const GasSpec& spec, const GasState& in, Volume v_out,
                                 const QuadratureOptions& quad) {
  const PathResult path = contact_path(in, v_out, 0.0, quad);
  const Energy du = internal_energy(spec, path.out) - internal_energy(spec, in);
  return IsothermalResult{path.out, path.work, path.work_closed_form, du - path.work};
}

AdiabaticResult adiabatic_step(const GasSpec& spec, const GasState& in, Volume v_out,
                               const QuadratureOptions& quad) {
  validate(in);
  check_target(v_out);
  if (v_out == in.v) return AdiabaticResult{in, Energy(0.0), Energy(0.0)};
  const double gamma = spec.gamma();
  const double ratio = v_out / in.v;
  const GasState out{in.p * std::pow(ratio, -gamma), v_out};
  const Energy work = internal_energy(spec, out) - internal_energy(spec, in);
  const Energy quadrature = -(in.p * in.v) * simd::simpson_power(1.0, ratio, gamma, quad.panels);
  return AdiabaticResult{out, work, quadrature};
}

GasState friction_step(const GasSpec& spec, const GasState& in, Energy w) {
  validate(in);
  if (!(w > Energy(0.0))) throw GasError("friction cannot extract work");
  const Pressure dp(w.value() * kGasConstant / (spec.molar_cv() * in.v.value()));
  return GasState{in.p + dp, in.v};
}

ContactResult thermal_contact(const GasSpec& spec, const GasState& in, const Reservoir& reservoir) {
  validate(in);
  const Energy target = reservoir.imposed_isotherm(spec);
  if (canonical((in.p * in.v).value()) == canonical(target.value())) return ContactResult{in, Energy(0.0)};
  const GasState out = on_isotherm(target, in.v);
  return ContactResult{out, internal_energy(spec, out) - internal_energy(spec, in)};
}

LedgerEntry gas_entry(const Gas& gas, const GasState& state) {
  return LedgerEntry{gas.leaf, gas.spec, state, state, Energy(0.0)};
}

ContactSegment isothermal_segment(const Gas& gas, const GasState& in, const Reservoir& reservoir, Volume v_out,
                                  const QuadratureOptions& quad) {
  validate(in);
  const Energy target = reservoir.imposed_isotherm(gas.spec);
  if (std::fabs((in.p * in.v - target).value()) > 1e-9 * target.value()) {
    throw GasError("gas " + gas.leaf.label + " is not on the isotherm of " + reservoir.label());
  }
  const double k = reservoir.drift_exponent(gas.spec);
  const PathResult path = contact_path(in, v_out, k, quad);
  const Energy heat_to_gas =
      internal_energy(gas.spec, path.out) - internal_energy(gas.spec, in) - path.work;
  const Reservoir after = reservoir.with_energy(reservoir.energy() - heat_to_gas);

  LedgerEntry g = gas_entry(gas, in);
  g.out = path.out;
  g.work = path.work;
  LedgerEntry r = reservoir.ledger_entry();
  r.out = after.state();
  IsothermalStep step{gas.leaf.id, reservoir.leaf().id, in.v, v_out, k, path.work, path.work_closed_form};
  return ContactSegment{Segment{step, {g, r}, true}, path.out, after};
}

GasSegment adiabatic_segment(const Gas& gas, const GasState& in, Volume v_out, const QuadratureOptions& quad) {
  const AdiabaticResult res = adiabatic_step(gas.spec, in, v_out, quad);
  LedgerEntry g = gas_entry(gas, in);
  g.out = res.out;
  g.work = res.work;
  AdiabaticStep step{gas.leaf.id, in.v, v_out, res.work_quadrature, res.work};
  return GasSegment{Segment{step, {g}, true}, res.out};
}

GasSegment friction_segment(const Gas& gas, const GasState& in, Energy w) {
  const GasState out = friction_step(gas.spec, in, w);
  LedgerEntry g = gas_entry(gas, in);
  g.out = out;
  g.work = w;
  return GasSegment{Segment{FrictionStep{gas.leaf.id, w}, {g}, false}, out};
}

ContactSegment contact_segment(const Gas& gas, const GasState& in, const Reservoir& reservoir) {
  const ContactResult res = thermal_contact(gas.spec, in, reservoir);
  const Reservoir after = reservoir.with_energy(reservoir.energy() - res.heat_to_gas);
  LedgerEntry g = gas_entry(gas, in);
  g.out = res.out;
  LedgerEntry r = reservoir.ledger_entry();
  r.out = after.state();
  const bool unchanged = res.heat_to_gas == Energy(0.0);
  return ContactSegment{
      Segment{ThermalContact{gas.leaf.id, reservoir.leaf().id, res.heat_to_gas}, {g, r}, unchanged}, res.out, after};
}

}  // namespace axitherm
