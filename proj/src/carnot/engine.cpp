#include "axitherm/carnot/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "axitherm/carnot/rational.hpp"

namespace axitherm {

EngineRun make_run(Process process, SystemId machine, const Reservoir& r1, const Reservoir& r2) {
  const Energy q1 = -heat_of(process, r1.system());
  const Energy q2 = -heat_of(process, r2.system());
  const Energy work = work_of(process, machine);
  const bool reversible = std::all_of(process.segments().begin(), process.segments().end(),
                                      [](const Segment& s) { return s.reversible; });
  return EngineRun{std::move(process), std::move(machine), r1, r2, q1, q2, work, reversible};
}

double energy_balance_residual(const EngineRun& run) {
  const double scale = std::max({std::fabs(run.q1.value()), std::fabs(run.q2.value()), 1.0});
  return std::fabs((run.work + run.q1 + run.q2).value()) / scale;
}

namespace {

void check_volumes(Volume v_a, Volume v_b) {
  if (!(v_a > Volume(0.0)) || !std::isfinite(v_a.value())) throw std::invalid_argument("V_a must be positive");
  if (!(v_b > v_a) || !std::isfinite(v_b.value())) throw std::invalid_argument("V_b must exceed V_a");
}

void check_distinct(const Reservoir& a, const Reservoir& b) {
  if (a.leaf() == b.leaf()) throw EngineError("an engine needs two distinct reservoir systems");
}

// Volume at which the adiabat through `from` meets the isotherm p V = target.
Volume adiabat_to_isotherm(const GasSpec& gas, const GasState& from, Energy target) {
  return from.v * std::pow((from.p * from.v) / target, 1.0 / (gas.gamma() - 1.0));
}

// End volume of the stroke on `r` starting at `from` (on r's isotherm) such
// that the adiabat through the end point passes through `start`.
Volume closing_volume(const GasSpec& gas, const GasState& from, const Reservoir& r, const GasState& start) {
  const double gm1 = gas.gamma() - 1.0;
  const double k = r.drift_exponent(gas);
  const double log_ratio =
      (std::log((start.p * start.v) / (from.p * from.v)) + k * std::log(start.v / from.v)) / (gm1 - k);
  return start.v * std::exp(log_ratio);
}

Segment close_cycle(const Gas& gas, const GasState& from, const GasState& start, const QuadratureOptions& quad) {
  GasSegment last = adiabatic_segment(gas, from, start.v, quad);
  if (std::fabs((last.gas.p - start.p).value()) > 1e-9 * start.p.value()) {
    throw EngineError("integrator inconsistency: cycle closes with relative pressure residual " +
                      std::to_string(std::fabs((last.gas.p - start.p).value()) / start.p.value()));
  }
  const Energy work = internal_energy(gas.spec, start) - internal_energy(gas.spec, from);
  last.segment.changes.front().out = start;
  last.segment.changes.front().work = work;
  std::get<AdiabaticStep>(last.segment.kind).work_closed_form = work;
  return last.segment;
}

// Repeated contact until the gas sits on the reservoir's current isotherm.
// One pass suffices for an ideal reservoir; a tank shifts as it absorbs heat.
Process settle(const Gas& gas, GasState& state, Reservoir& r) {
  Process out;
  for (int pass = 0; pass < 64; ++pass) {
    const Energy target = r.imposed_isotherm(gas.spec);
    if (pass > 0 && std::fabs((state.p * state.v - target).value()) <= 1e-13 * target.value()) break;
    ContactSegment c = contact_segment(gas, state, r);
    out = concat(out, Process(std::move(c.segment)));
    state = c.gas;
    r = c.reservoir;
  }
  return out;
}

struct CycleParts {
  Process process;
  Gas gas;
};

CycleParts cycle(const GasSpec& spec, const Reservoir& r_hot, const Reservoir& r_cold, Volume v_a, Volume v_b,
                 const QuadratureOptions& quad, const std::string& label, Energy friction) {
  check_volumes(v_a, v_b);
  check_distinct(r_hot, r_cold);
  const Gas gas = make_gas(label, spec);
  const GasState a = on_isotherm(r_hot.imposed_isotherm(spec), v_a);

  ContactSegment hot = isothermal_segment(gas, a, r_hot, v_b, quad);
  GasSegment down = adiabatic_segment(gas, hot.gas, adiabat_to_isotherm(spec, hot.gas, r_cold.imposed_isotherm(spec)),
                                      quad);
  Process p = concat(Process(hot.segment), Process(down.segment));

  GasState c = down.gas;
  Reservoir cold = r_cold;
  if (friction > Energy(0.0)) {
    GasSegment f = friction_segment(gas, c, friction);
    c = f.gas;
    p = concat(p, Process(std::move(f.segment)));
    p = concat(p, settle(gas, c, cold));
  }

  ContactSegment stroke = isothermal_segment(gas, c, cold, closing_volume(spec, c, cold, a), quad);
  p = concat(p, Process(stroke.segment));
  p = concat(p, Process(close_cycle(gas, stroke.gas, a, quad)));
  return CycleParts{std::move(p), gas};
}

}  // namespace

EngineRun build_carnot_cycle(const GasSpec& gas, const Reservoir& r_hot, const Reservoir& r_cold, Volume v_a,
                             Volume v_b, const QuadratureOptions& quad, const std::string& label) {
  CycleParts parts = cycle(gas, r_hot, r_cold, v_a, v_b, quad, label, Energy(0.0));
  return make_run(std::move(parts.process), parts.gas.system(), r_hot, r_cold);
}

EngineRun build_carnot_cycle(const MachineConfig& config, const Reservoir& r_hot, const Reservoir& r_cold,
                             const std::string& label) {
  return build_carnot_cycle(config.gas, r_hot, r_cold, config.v_a, config.v_b, config.quad, label);
}

EngineRun build_carnot_cycle_for_heat(const GasSpec& gas, const Reservoir& r1, const Reservoir& r2, Volume v_a,
                                      HeatSide side, Energy target, const QuadratureOptions& quad,
                                      const std::string& label) {
  if (!(target > Energy(0.0)) || !std::isfinite(target.value())) {
    throw std::invalid_argument("target heat must be positive");
  }
  const Reservoir& held = side == HeatSide::first ? r1 : r2;
  // Both strokes move heat K ln(V_b / V_a) for ideal reservoirs; a tank's
  // drift makes the heat slightly nonlinear in the log-volume ratio.
  double x = target / held.imposed_isotherm(gas);
  auto heat = [&](const EngineRun& run) { return std::fabs((side == HeatSide::first ? run.q1 : run.q2).value()); };

  EngineRun run = build_carnot_cycle(gas, r1, r2, v_a, v_a * std::exp(x), quad, label);
  for (int iter = 0; iter < 32; ++iter) {
    const double got = heat(run);
    if (std::fabs(got - target.value()) <= 1e-13 * target.value()) break;
    x *= target.value() / got;
    run = build_carnot_cycle(gas, r1, r2, v_a, v_a * std::exp(x), quad, label);
  }
  return run;
}

EngineRun build_lossy_cycle(const MachineConfig& config, const Reservoir& r_hot, const Reservoir& r_cold,
                            double loss, const std::string& label) {
  if (!(loss > 0.0 && loss < 1.0)) throw std::invalid_argument("loss fraction must lie in (0, 1)");
  const EngineRun reference = build_carnot_cycle(config, r_hot, r_cold, label);
  const double w_rev = std::fabs(reference.work.value());
  const double base = w_rev > 1e-9 * std::fabs(reference.q1.value()) ? w_rev : std::fabs(reference.q1.value());
  CycleParts parts = cycle(config.gas, r_hot, r_cold, config.v_a, config.v_b, config.quad, label, Energy(loss * base));
  return make_run(std::move(parts.process), parts.gas.system(), r_hot, r_cold);
}

EngineRun reverse_run(const EngineRun& run) {
  auto reversed = reverse(run.process);
  if (const auto* bad = std::get_if<NotReversible>(&reversed)) {
    throw EngineError("run is not reversible: " + bad->reason);
  }
  return make_run(std::get<Process>(std::move(reversed)), run.machine, reservoir_after(run.process, run.r1),
                  reservoir_after(run.process, run.r2));
}

CopyScaling scale_engines(const EngineRun& a, const EngineRun& b) {
  const double qa = std::fabs(a.q2.value());
  const double qb = std::fabs(b.q2.value());
  if (qa == 0.0 || qb == 0.0) throw EngineError("copy scaling needs nonzero Q2 on both engines");
  constexpr std::int64_t kMaxDen = 1000000;
  const Rational r = simplest_within(qa / qb, 1e-9, kMaxDen);
  if (r.den == 0) {
    double achieved = 1e-9;
    while (achieved < 1.0 && simplest_within(qa / qb, achieved, kMaxDen).den == 0) achieved *= 10.0;
    std::ostringstream msg;
    msg << "heats cannot be matched within 1e-9 using at most " << kMaxDen << " copies; best precision " << achieved;
    throw EngineError(msg.str());
  }
  return CopyScaling{r.den, r.num};
}

namespace {

// Fresh systems for every participant of `run`; reservoirs r1 and r2 become
// new copies of their kinds.
struct Materialized {
  Process process;
  Reservoir r1;
  Reservoir r2;
};

Materialized materialize(const EngineRun& run, const std::string& tag) {
  Reservoir r1 = run.r1.fresh_copy(run.r1.label() + tag);
  Reservoir r2 = run.r2.fresh_copy(run.r2.label() + tag);
  std::map<LeafId, Leaf> mapping;
  for (const auto& leaf : run.process.participants()) {
    if (leaf == run.r1.leaf()) {
      mapping.emplace(leaf.id, r1.leaf());
    } else if (leaf == run.r2.leaf()) {
      mapping.emplace(leaf.id, r2.leaf());
    } else {
      mapping.emplace(leaf.id, make_leaf(leaf.kind, leaf.label + tag));
    }
  }
  return Materialized{relabel(run.process, mapping), r1, r2};
}

Reservoir merge_all(Process& p, const std::vector<Reservoir>& copies, const std::string& label) {
  Reservoir survivor = copies.front();
  for (std::size_t i = 1; i < copies.size(); ++i) {
    ProcessMerge m = merge_in_process(p, survivor, copies[i], label + std::to_string(i));
    p = std::move(m.process);
    survivor = m.fresh;
  }
  return survivor;
}

SystemId everything_except(const Process& p, const std::vector<Leaf>& excluded) {
  std::vector<SystemId> parts;
  for (const auto& leaf : p.participants()) {
    if (std::find(excluded.begin(), excluded.end(), leaf) == excluded.end()) parts.emplace_back(leaf);
  }
  if (parts.empty()) throw EngineError("machine would be empty");
  return compose_all(parts);
}

}  // namespace

CoupledMachine couple_against_reverse(const EngineRun& run, const EngineRun& reversed) {
  if (!run.r1.same_kind(reversed.r1) || !run.r2.same_kind(reversed.r2)) {
    throw EngineError("coupled engines must run between the same reservoir kinds");
  }
  if (std::signbit(run.q2.value()) == std::signbit(reversed.q2.value())) {
    throw EngineError("unmatched heats: Q2 must flow in opposite directions");
  }
  const CopyScaling scaling = scale_engines(run, reversed);
  if (scaling.k + scaling.l > kMaxMaterializedCopies) {
    throw EngineError("copy scaling needs " + std::to_string(scaling.k + scaling.l) + " machine copies, above the cap");
  }

  Process p;
  std::vector<Reservoir> ones;
  std::vector<Reservoir> twos;
  auto add = [&](const EngineRun& r, long long count, const std::string& tag) {
    for (long long i = 0; i < count; ++i) {
      Materialized m = materialize(r, tag + std::to_string(i));
      p = concat(p, m.process);
      ones.push_back(m.r1);
      twos.push_back(m.r2);
    }
  };
  add(run, scaling.k, "#");
  add(reversed, scaling.l, "#rev");

  merge_all(p, twos, run.r2.label() + "~");
  const Reservoir survivor = merge_all(p, ones, run.r1.label() + "~");
  SystemId machine = everything_except(p, {survivor.leaf()});
  const Energy net = -heat_of(p, survivor.system());
  return CoupledMachine{std::move(p), std::move(machine), survivor, net, scaling};
}

EngineRun chain_engines(const EngineRun& run_12, const EngineRun& run_23) {
  const Reservoir& shared_a = run_12.r2;
  const Reservoir& shared_b = run_23.r1;
  if (!shared_a.same_kind(shared_b)) throw EngineError("chained engines must share a reservoir kind");
  if (shared_a.leaf() == shared_b.leaf()) throw EngineError("chained engines must use distinct copies of the shared reservoir");
  if (run_12.r1.leaf() == run_23.r2.leaf()) throw EngineError("chained engines must end on distinct reservoirs");
  for (const auto& leaf : run_23.process.participants()) {
    if (run_12.process.participates(leaf.id)) throw EngineError("chained engines must not share systems");
  }
  if (std::fabs((run_23.q1 + run_12.q2).value()) > 1e-9 * std::fabs(run_12.q2.value())) {
    throw EngineError("unmatched heats: the second engine must absorb what the first rejects");
  }
  const Process joined = concat(run_12.process, run_23.process);
  ProcessMerge merged = merge_in_process(joined, shared_a, shared_b, shared_a.label() + "~");
  SystemId machine = everything_except(merged.process, {run_12.r1.leaf(), run_23.r2.leaf()});
  return make_run(std::move(merged.process), std::move(machine), run_12.r1, run_23.r2);
}

}  // namespace axitherm
