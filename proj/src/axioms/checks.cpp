#include "axitherm/axioms/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "axitherm/carnot/tau.hpp"

namespace axitherm {

using nlohmann::json;

namespace {

// Uniform doubles straight from the engine's bits, so sequences do not depend
// on the standard library's distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1p-53); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64 rng_;
};

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

// Sum over segments of |work| + |dU| of every change: the energy turnover a
// residual is measured against.
double gross_turnover(const Process& p) {
  double total = 0.0;
  for (const auto& seg : p.segments()) {
    for (const auto& c : seg.changes) {
      total += std::fabs(c.work.value()) + std::fabs((internal_energy(c, c.out) - internal_energy(c, c.in)).value());
    }
  }
  return std::max(total, 1.0);
}

// ---------------------------------------------------------------------------
// First law

struct Connection {
  GasState from;
  GasState to;
  std::vector<Process> paths;
};

GasState adiabat_image(const GasSpec& spec, const GasState& s, Volume v) {
  return GasState{s.p * std::pow(s.v / v, spec.gamma()), v};
}

Process chain(const std::vector<Segment>& segments) {
  Process p;
  for (const auto& s : segments) p = concat(p, Process(s));
  return p;
}

// Friction at fixed volume from `s` up to pressure `target`.
std::optional<GasSegment> heat_up(const Gas& gas, const GasState& s, Pressure target) {
  const Energy w = internal_energy(gas.spec, GasState{target, s.v}) - internal_energy(gas.spec, s);
  if (!(w > Energy(0.0))) return std::nullopt;
  return friction_segment(gas, s, w);
}

// Work-process paths from u to v, which must satisfy p_v V_v^gamma >= p_u V_u^gamma.
std::vector<Process> paths_between(const Gas& gas, const GasState& u, const GasState& v, const QuadratureOptions& q) {
  const double g = gas.spec.gamma();
  const Volume excursion = u.v == v.v ? u.v * 1.5 : Volume(std::sqrt(u.v.value() * v.v.value()));
  std::vector<Process> out;

  // adiabat then friction
  {
    GasSegment a = adiabatic_segment(gas, u, v.v, q);
    std::vector<Segment> segs{a.segment};
    if (auto f = heat_up(gas, a.gas, v.p)) segs.push_back(f->segment);
    out.push_back(chain(segs));
  }
  // friction then adiabat
  {
    const Pressure p_star = v.p * std::pow(v.v / u.v, g);
    std::vector<Segment> segs;
    GasState s = u;
    if (auto f = heat_up(gas, u, p_star)) {
      segs.push_back(f->segment);
      s = f->gas;
    }
    segs.push_back(adiabatic_segment(gas, s, v.v, q).segment);
    out.push_back(chain(segs));
  }
  // adiabat, friction at an intermediate volume, adiabat
  {
    GasSegment a = adiabatic_segment(gas, u, excursion, q);
    std::vector<Segment> segs{a.segment};
    GasState s = a.gas;
    if (auto f = heat_up(gas, s, v.p * std::pow(v.v / excursion, g))) {
      segs.push_back(f->segment);
      s = f->gas;
    }
    segs.push_back(adiabatic_segment(gas, s, v.v, q).segment);
    out.push_back(chain(segs));
  }
  return out;
}

Connection connect(const Gas& gas, const GasState& x, const GasState& y, const QuadratureOptions& q) {
  const GasState image = adiabat_image(gas.spec, x, y.v);
  // Friction only raises energy: go from the lower adiabat to the higher one.
  if (y.p >= image.p) return Connection{x, y, paths_between(gas, x, y, q)};
  return Connection{y, x, paths_between(gas, y, x, q)};
}

GasState end_state(const Process& p, const Gas& gas) { return std::get<GasState>(p.entry(gas.leaf.id).out); }

}  // namespace

CheckReport check_first_law(const GasSpec& spec, std::size_t samples, std::uint64_t seed, const CheckOptions& options) {
  if (samples == 0) return skipped("first_law", "no samples requested");
  const double tol = options.tolerance;
  Sampler rng(seed);
  const Gas gas = make_gas("S", spec);
  auto sample = [&] {
    return GasState{Pressure(rng.log_uniform(1e4, 1e6)), Volume(rng.log_uniform(1e-3, 1e-1))};
  };

  CheckReport report;
  report.check_id = "first_law";

  // sigma1 = sigma2: the segment-free process has zero work.
  const GasState still = sample();
  const Process identity = Process::identity({gas_entry(gas, still)});
  const double idle_work = std::fabs(work_of(identity, gas.system()).value());

  double worst_du = 0.0, worst_agree = 0.0, worst_end = 0.0, worst_quad = 0.0;
  double unconnected = 0.0;
  std::size_t paths = 0, reversed_pairs = 0;
  std::optional<json> witness;
  double witness_score = -1.0;

  for (std::size_t i = 0; i < samples; ++i) {
    const GasState x = sample();
    GasState y = sample();
    if (i % 10 == 9) y.v = x.v;  // equal volumes: only one direction is reachable

    const Connection c = connect(gas, x, y, options.machine.quad);
    if (c.paths.empty()) {
      unconnected += 1.0;
      continue;
    }
    if (!(c.from.p == x.p && c.from.v == x.v)) ++reversed_pairs;
    const double du = (internal_energy(spec, c.to) - internal_energy(spec, c.from)).value();

    std::vector<double> works;
    double pair_score = 0.0;
    for (const auto& path : c.paths) {
      ++paths;
      const double gross = gross_turnover(path);
      const double w = work_of(path, gas.system()).value();
      works.push_back(w);
      const GasState end = end_state(path, gas);
      const double end_err = std::max(rel(end.p.value(), c.to.p.value()), rel(end.v.value(), c.to.v.value()));
      const double du_err = std::fabs(w - du) / gross;
      worst_end = std::max(worst_end, end_err);
      worst_du = std::max(worst_du, du_err);
      pair_score = std::max({pair_score, end_err, du_err});
      for (const auto& seg : path.segments()) {
        if (const auto* a = std::get_if<AdiabaticStep>(&seg.kind)) {
          const double denom = std::max(std::fabs(a->work_closed_form.value()), 1e-300);
          if (a->v_in != a->v_out) {
            worst_quad = std::max(worst_quad, std::fabs((a->work_quadrature - a->work_closed_form).value()) / denom);
          }
        }
      }
    }
    for (std::size_t a = 0; a < works.size(); ++a) {
      for (std::size_t b = a + 1; b < works.size(); ++b) {
        const double scale = std::max({gross_turnover(c.paths[a]), gross_turnover(c.paths[b])});
        const double d = std::fabs(works[a] - works[b]) / scale;
        worst_agree = std::max(worst_agree, d);
        pair_score = std::max(pair_score, d);
      }
    }
    if (pair_score > witness_score) {
      witness_score = pair_score;
      json w{{"sigma1", {{"p", x.p.value()}, {"V", x.v.value()}}}, {"sigma2", {{"p", y.p.value()}, {"V", y.v.value()}}}};
      json list = json::array();
      for (const auto& path : c.paths) list.push_back(serialize_process(path));
      w["paths"] = std::move(list);
      witness = std::move(w);
    }
  }

  report.residuals = {
      {"identity_work", idle_work, 0.0},
      {"unconnected_pairs", unconnected, 0.0},
      {"path_work_vs_dU", worst_du, tol},
      {"path_work_agreement", worst_agree, tol},
      {"path_endpoint", worst_end, tol},
      {"adiabat_quadrature_vs_dU", worst_quad, tol},
  };
  report.observations = {{"pairs", static_cast<double>(samples)},
                         {"paths", static_cast<double>(paths)},
                         {"pairs_connected_in_reverse", static_cast<double>(reversed_pairs)}};
  return finish(std::move(report), std::move(witness));
}

CheckReport check_second_law(const Process& p, const Reservoir& r, const SystemId& s, const CheckOptions& options) {
  const std::string id = "second_law";
  if (s.contains(r.leaf().id)) return skipped(id, "the reservoir is part of the machine");
  for (const auto& leaf : p.participants()) {
    if (!(leaf == r.leaf()) && !s.contains(leaf.id)) {
      return skipped(id, "system " + leaf.label + " takes part besides the machine and the reservoir");
    }
  }
  const double gross = gross_turnover(p);
  const double tol = options.tolerance * gross;
  const double w_r = work_of(p, r.system()).value();
  if (std::fabs(w_r) > tol) return skipped(id, "work is invested into the reservoir");
  if (!is_cyclic_on(p, s)) return skipped(id, "the process is not cyclic on the machine");

  const double w_s = work_of(p, s).value();
  const double q_r = heat_of(p, r.system()).value();
  CheckReport report;
  report.check_id = id;
  report.residuals = {{"extracted_work", -w_s, tol}, {"heat_drawn_from_reservoir", -q_r, tol}};
  report.observations = {{"W_machine", w_s}, {"Q_reservoir", q_r}, {"turnover", gross}};
  return finish(std::move(report), serialize_process(p));
}

CheckReport check_kelvin_probe(const Reservoir& source, const Reservoir& partner, const CheckOptions& options) {
  const EngineRun run = build_carnot_cycle(options.machine, source, partner);
  Process p = run.process;
  Reservoir after = reservoir_after(p, partner);
  const Energy absorbed = after.energy() - partner.energy();
  std::string how;
  if (partner.permits_work_extraction() && absorbed > Energy(0.0)) {
    p = concat(p, Process(work_investment_segment(after, -absorbed)));
    how = "partner restored by extracting work";
  } else {
    p = concat(p, reverse_run(run).process);
    how = "partner restored by the reversed cycle";
  }
  CheckReport report = check_second_law(p, source, compose(run.machine, partner.system()), options);
  report.note = report.note.empty() ? how : how + "; " + report.note;
  return report;
}

CheckReport check_lemma1(const EngineRun& run, const CheckOptions& options) {
  const double q1 = run.q1.value();
  const double q2 = run.q2.value();
  const double scale = std::max({std::fabs(q1), std::fabs(q2), 1.0});
  const double tol = options.tolerance;
  if (std::fabs(q1) <= tol * scale && std::fabs(q2) <= tol * scale) {
    return skipped("lemma1", "trivial setting excluded: both heats vanish");
  }
  CheckReport report;
  report.check_id = "lemma1";
  report.residuals.push_back({"energy_balance", energy_balance_residual(run), tol});
  // min(Q1, Q2) < 0, beyond rounding.
  report.residuals.push_back({"min_heat", std::min(q1, q2) / scale, -tol});
  if (run.reversible) report.residuals.push_back({"max_heat_reversible", -std::max(q1, q2) / scale, -tol});
  if (std::fabs(q1) <= tol * scale) report.residuals.push_back({"q2_when_q1_zero", q2 / scale, -tol});
  report.observations = {{"Q1", q1}, {"Q2", q2}, {"W", run.work.value()}};
  return finish(std::move(report), serialize_process(run.process));
}

CheckReport check_lemma2(const std::array<Reservoir, 3>& t, const CheckOptions& options) {
  const double tol = options.tolerance;
  const MachineConfig& m = options.machine;
  CheckReport report;
  report.check_id = "lemma2";

  double reflexive = 0.0;
  for (const auto& r : t) reflexive = std::max(reflexive, std::fabs(measure_tau(r, r, m) - 1.0));

  const double ab = measure_tau(t[0], t[1], m);
  const double ba = measure_tau(t[1], t[0], m);
  const double bc = measure_tau(t[1], t[2], m);
  const double cb = measure_tau(t[2], t[1], m);
  const double ac = measure_tau(t[0], t[2], m);
  const double ca = measure_tau(t[2], t[0], m);
  const double inverse = std::max({std::fabs(ab * ba - 1.0), std::fabs(bc * cb - 1.0), std::fabs(ac * ca - 1.0)});
  const double product = std::fabs(ab * bc - ac) / ac;

  // Chained engine a -> b -> c through two copies of b.
  const Reservoir first = t[0];
  const Reservoir mid_a = t[1].fresh_copy(t[1].label() + "'").with_energy(t[1].energy());
  const Reservoir mid_b = t[1].fresh_copy(t[1].label() + "''").with_energy(t[1].energy());
  const Reservoir last = t[2].leaf() == t[0].leaf() ? t[2].fresh_copy(t[2].label() + "'").with_energy(t[2].energy())
                                                     : t[2];
  const EngineRun run_12 = build_carnot_cycle(m, first, mid_a, "S");
  const EngineRun run_23 = build_carnot_cycle_for_heat(GasSpec::diatomic(m.gas.moles()), mid_b, last, m.v_a,
                                                       HeatSide::first, -run_12.q2, m.quad, "S'");
  const EngineRun chained = chain_engines(run_12, run_23);
  const double tau_chain = -chained.q1.value() / chained.q2.value();
  const double chain_err = std::fabs(tau_chain - ac) / ac;
  const double chain_work =
      std::fabs((chained.work - run_12.work - run_23.work).value()) / std::max(std::fabs(chained.q1.value()), 1.0);

  report.residuals = {
      {"reflexive", reflexive, tol},
      {"inverse", inverse, tol},
      {"multiplicative", product, tol},
      {"chained_vs_direct", chain_err, tol},
      {"chained_work_additive", chain_work, tol},
      {"chained_cyclic", is_cyclic_on(chained.process, chained.machine) ? 0.0 : 1.0, 0.0},
  };
  report.observations = {{"tau_ab", ab}, {"tau_bc", bc}, {"tau_ac", ac}, {"tau_chained", tau_chain}};
  return finish(std::move(report), serialize_process(chained.process));
}

CheckReport check_carnot_bound(double loss, const Reservoir& hot, const Reservoir& cold, std::size_t trials,
                               std::uint64_t seed, const CheckOptions& options) {
  if (!(loss > 0.0 && loss < 1.0)) return skipped("carnot_bound", "loss fraction must lie in (0, 1)");
  if (trials == 0) return skipped("carnot_bound", "no trials requested");
  const double tol = options.tolerance;
  const double tau = measure_tau(hot, cold, options.machine);
  Sampler rng(seed);

  CheckReport report;
  report.check_id = "carnot_bound";
  report.observations.push_back({"tau", tau});
  double worst_excess = -HUGE_VAL;
  double worst_coupled = -HUGE_VAL;
  double skipped_second_law = 0.0;
  std::optional<json> witness;

  for (std::size_t i = 0; i < trials; ++i) {
    MachineConfig cfg = options.machine;
    cfg.gas = GasSpec::from_gamma(rng.uniform(0.5, 3.0), rng.uniform(1.1, 1.67));
    cfg.v_a = Volume(rng.log_uniform(1e-3, 1e-1));
    cfg.v_b = cfg.v_a * rng.uniform(1.2, 4.0);

    const Reservoir h = hot.fresh_copy(hot.label()).with_energy(hot.energy());
    const Reservoir c = cold.fresh_copy(cold.label()).with_energy(cold.energy());
    const EngineRun lossy = build_lossy_cycle(cfg, h, c, loss);
    const double ratio = -lossy.q1.value() / lossy.q2.value();
    report.observations.push_back({"ratio_" + std::to_string(i), ratio});
    const double excess = (ratio - tau) / tau;
    if (excess > worst_excess) {
      worst_excess = excess;
      witness = serialize_process(lossy.process);
    }

    // Couple against a reversed reversible engine that takes up exactly the
    // heat the lossy one rejects into the cold side.
    const EngineRun matched = build_carnot_cycle_for_heat(cfg.gas, hot.fresh_copy(hot.label() + "'"),
                                                          cold.fresh_copy(cold.label() + "'"), cfg.v_a,
                                                          HeatSide::second, -lossy.q2, cfg.quad, "S_rev");
    const CoupledMachine coupled = couple_against_reverse(lossy, reverse_run(matched));
    const double scale = std::max(std::fabs(lossy.q1.value()), 1.0);
    worst_coupled = std::max(worst_coupled, coupled.net_heat.value() / scale);
    const CheckReport kelvin = check_second_law(coupled.process, coupled.survivor, coupled.machine, options);
    if (kelvin.status == CheckStatus::skipped) skipped_second_law += 1.0;
    if (kelvin.status == CheckStatus::fail) witness = kelvin.witness;
  }

  report.residuals = {
      {"ratio_excess_over_tau", worst_excess, tol},
      {"ratio_strictly_below_tau", worst_excess, 0.0, true},
      {"coupled_net_heat", worst_coupled, tol},
      {"coupled_second_law_not_applicable", skipped_second_law, 0.0},
  };
  return finish(std::move(report), std::move(witness));
}

CheckReport check_zeroth_law(const std::vector<Reservoir>& rs, const CheckOptions& options) {
  if (rs.size() < 3) return skipped("zeroth_law", "needs at least three reservoirs");
  const double tol = options.tolerance;
  const std::size_t n = rs.size();
  std::vector<std::vector<double>> tau(n, std::vector<double>(n));
  std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tau[i][j] = measure_tau(rs[i], rs[j], options.machine);
      eq[i][j] = std::fabs(tau[i][j] - 1.0) < tol;
    }
  }
  const TemperatureAssignment temps = assign_temperatures(rs, rs.front(), 1.0, options.machine);

  double not_reflexive = 0.0, not_symmetric = 0.0, intransitive = 0.0, class_mismatch = 0.0, triples = 0.0;
  json violations = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    if (!eq[i][i]) {
      not_reflexive += 1.0;
      violations.push_back({{"reflexive", rs[i].label()}});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (eq[i][j] != eq[j][i]) {
        not_symmetric += 1.0;
        violations.push_back({{"symmetric", {rs[i].label(), rs[j].label()}}});
      }
      const double ti = temps.temps.at(rs[i].label());
      const double tj = temps.temps.at(rs[j].label());
      if (eq[i][j] != (std::fabs(ti - tj) < tol * ti)) {
        class_mismatch += 1.0;
        violations.push_back({{"temperature_class", {rs[i].label(), rs[j].label()}}});
      }
      for (std::size_t k = 0; k < n; ++k) {
        triples += 1.0;
        if (eq[i][j] && eq[j][k] && !eq[i][k]) {
          intransitive += 1.0;
          violations.push_back({{"transitive", {rs[i].label(), rs[j].label(), rs[k].label()}}});
        }
      }
    }
  }

  // Classes in first-appearance order.
  std::vector<int> cls(n, -1);
  std::ostringstream note;
  int classes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    note << (classes ? " " : "classes: ") << "{";
    for (std::size_t j = i; j < n; ++j) {
      if (cls[j] < 0 && eq[i][j]) {
        cls[j] = classes;
        note << (j == i ? "" : ",") << rs[j].label();
      }
    }
    note << "}";
    ++classes;
  }

  CheckReport report;
  report.check_id = "zeroth_law";
  report.note = note.str();
  report.residuals = {{"not_reflexive", not_reflexive, 0.0},
                      {"not_symmetric", not_symmetric, 0.0},
                      {"intransitive_triples", intransitive, 0.0},
                      {"class_temperature_mismatch", class_mismatch, 0.0}};
  report.observations = {{"triples", triples}, {"classes", static_cast<double>(classes)}};
  json matrix = json::array();
  for (std::size_t i = 0; i < n; ++i) matrix.push_back(tau[i]);
  return finish(std::move(report), json{{"tau", matrix}, {"violations", violations}});
}

CheckReport check_reservoir_postulates(const Reservoir& r, std::size_t trials, std::uint64_t seed,
                                       const CheckOptions& options) {
  if (trials == 0) return skipped("reservoir_postulates", "no trials requested");
  const double tol = options.tolerance;
  Sampler rng(seed);
  // Heat steps stay well inside a tank's window.
  double amplitude = 1.0e3;
  if (const auto w = r.window()) {
    amplitude = std::min(amplitude, 0.05 * std::min((r.energy() - w->min).value(), (w->max - r.energy()).value()));
  }

  double not_invertible = 0.0, walk_err = 0.0, accepted = 0.0, ledger_changed = 0.0, merge_err = 0.0;
  std::optional<json> witness;

  for (std::size_t t = 0; t < trials; ++t) {
    // (i) a walk of heats and its reverse return to the starting state; the
    // state is a function of the energy alone.
    std::vector<Energy> steps(5 + rng.index(10));
    Reservoir walker = r;
    for (auto& q : steps) {
      q = Energy(rng.uniform(-amplitude, amplitude) / static_cast<double>(steps.size()));
      walker = exchange_heat(walker, q);
    }
    const Reservoir same_energy = r.with_energy(walker.energy());
    if (!identical_state(same_energy.state(), walker.state())) not_invertible += 1.0;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) walker = exchange_heat(walker, -*it);
    if (!same_state(walker.state(), r.state())) not_invertible += 1.0;
    walk_err = std::max(walk_err, std::fabs((walker.energy() - r.energy()).value()) / std::max(amplitude, 1.0));

    // (ii) no work can be drawn out.
    const Energy w(rng.log_uniform(1e-6, amplitude));
    try {
      const Segment s = work_investment_segment(r, -w);
      accepted += 1.0;
      if (!witness) witness = serialize_process(Process(s));
    } catch (const ReservoirError&) {
    }

    // (iii) two copies feed a gas in turn; merging them must not touch the gas.
    const Reservoir a = r.fresh_copy(r.label() + "_a").with_energy(r.energy());
    const Reservoir b = r.fresh_copy(r.label() + "_b").with_energy(r.energy());
    const Gas gas = make_gas("S", options.machine.gas);
    const Volume v0(rng.log_uniform(1e-3, 1e-1));
    const GasState start = on_isotherm(a.imposed_isotherm(gas.spec), v0);
    ContactSegment first = isothermal_segment(gas, start, a, v0 * rng.uniform(1.1, 2.0), options.machine.quad);
    Process p(first.segment);
    GasState s = first.gas;
    ContactSegment touch = contact_segment(gas, s, b);
    p = concat(p, Process(touch.segment));
    ContactSegment second =
        isothermal_segment(gas, touch.gas, touch.reservoir, touch.gas.v * rng.uniform(0.5, 2.0), options.machine.quad);
    p = concat(p, Process(second.segment));

    const ProcessMerge merged = merge_in_process(p, a, b, r.label() + "~");
    const LedgerEntry& before = p.entry(gas.leaf.id);
    const LedgerEntry& after = merged.process.entry(gas.leaf.id);
    if (!identical_state(before.in, after.in) || !identical_state(before.out, after.out) ||
        std::memcmp(&before.work, &after.work, sizeof(Energy)) != 0) {
      ledger_changed += 1.0;
      if (!witness) witness = serialize_process(merged.process);
    }
    const double qa = heat_of(p, a.system()).value();
    const double qb = heat_of(p, b.system()).value();
    const double scale = std::max({std::fabs(qa), std::fabs(qb), 1.0});
    merge_err = std::max(merge_err, std::fabs(merged.supplied.value() + qa + qb) / scale);
    if (!is_cyclic_on(merged.process, compose(a.system(), b.system()))) ledger_changed += 1.0;
  }

  CheckReport report;
  report.check_id = "reservoir_postulates";
  report.residuals = {{"non_invertible_walks", not_invertible, 0.0},
                      {"walk_return_error", walk_err, tol},
                      {"accepted_work_extractions", accepted, 0.0},
                      {"third_party_ledger_changes", ledger_changed, 0.0},
                      {"merged_heat_error", merge_err, tol}};
  report.observations = {{"trials", static_cast<double>(trials)}};
  return finish(std::move(report), std::move(witness));
}

}  // namespace axitherm
