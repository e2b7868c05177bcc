#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "axitherm/carnot/rational.hpp"
#include "axitherm/carnot/tau.hpp"
#include "axitherm/reservoir/testing.hpp"
#include "support.hpp"

using namespace axitherm;
using axitherm::test::rel_err;

namespace {

Reservoir ideal(const char* name, double theta) { return Reservoir::ideal(name, KindParam(theta)); }

// Brute force: first denominator k with some l inside the tolerance.
Rational brute_force(double target, double tol, std::int64_t max_den) {
  for (std::int64_t k = 1; k <= max_den; ++k) {
    const auto l = static_cast<std::int64_t>(std::llround(target * static_cast<double>(k)));
    if (l > 0 && std::fabs(static_cast<double>(l) - static_cast<double>(k) * target) <= tol * target * static_cast<double>(k)) {
      return Rational{l, k};
    }
  }
  return Rational{0, 0};
}

EngineRun with_q2(EngineRun run, double q2) {
  run.q2 = Energy(q2);
  return run;
}

}  // namespace

TEST_CASE("carnot cycle between 600 and 300") {
  const Reservoir h = ideal("H", 600.0);
  const Reservoir c = ideal("C", 300.0);
  const EngineRun run = build_carnot_cycle(MachineConfig{}, h, c);
  // n R theta ln 2 for one mole at each temperature.
  CHECK(rel_err(run.q1.value(), 3457.88779292265695) < 1e-12);
  CHECK(rel_err(run.q2.value(), -1728.94389646132847) < 1e-12);
  CHECK(rel_err(-run.q1.value() / run.q2.value(), 2.0) < 1e-9);
  CHECK(run.reversible);
  CHECK(is_cyclic_on(run.process, run.machine));
  CHECK(energy_balance_residual(run) < 1e-12);
  CHECK(run.work < Energy(0.0));
  CHECK(run.process.segments().size() == 4);
  CHECK(work_of(run.process, h.system()) == Energy(0.0));
  CHECK(work_of(run.process, c.system()) == Energy(0.0));
}

TEST_CASE("equal kinds only transfer heat") {
  const Reservoir a = ideal("A", 300.0);
  const EngineRun run = build_carnot_cycle(MachineConfig{}, a, a.fresh_copy("A'"));
  CHECK(std::fabs(run.work.value()) < 1e-9 * run.q1.value());
  CHECK(rel_err(-run.q2.value(), run.q1.value()) < 1e-12);
}

TEST_CASE("cycle preconditions") {
  const Reservoir a = ideal("A", 300.0);
  CHECK_THROWS_AS(build_carnot_cycle(GasSpec::monatomic(), a, a, Volume(0.01), Volume(0.02)), EngineError);
  CHECK_THROWS_AS(build_carnot_cycle(GasSpec::monatomic(), a, ideal("B", 200.0), Volume(0.02), Volume(0.01)),
                  std::invalid_argument);
}

TEST_CASE("tau identities") {
  const Reservoir h = ideal("H", 600.0);
  const Reservoir c = ideal("C", 300.0);
  CHECK(measure_tau(h, h) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(measure_tau(h, c) * measure_tau(c, h) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rel_err(measure_tau(c, ideal("D", 150.0)), measure_tau(h, c)) < 1e-9);
  CHECK(measure(c, h).run.q2 < Energy(0.0));
}

TEST_CASE("tau does not depend on the machine") {
  const Reservoir h = ideal("H", 600.0);
  const Reservoir c = ideal("C", 300.0);
  test::Gen gen(5);
  for (int i = 0; i < 20; ++i) {
    MachineConfig cfg;
    cfg.gas = GasSpec::from_gamma(gen.uniform(0.2, 4.0), gen.uniform(1.1, 1.8));
    cfg.v_a = Volume(gen.log_uniform(1e-4, 1.0));
    cfg.v_b = cfg.v_a * gen.uniform(1.05, 10.0);
    CHECK(rel_err(measure_tau(h, c, cfg), 2.0) < 1e-9);
  }
}

TEST_CASE("operating regimes") {
  const Reservoir a = ideal("A", 500.0);
  const Reservoir b = ideal("B", 250.0);
  const EngineRun engine = build_carnot_cycle(MachineConfig{}, a, b);
  const EngineRun pump = build_carnot_cycle(MachineConfig{}, b, a);
  CHECK(engine.work < Energy(0.0));
  CHECK(pump.work > Energy(0.0));
  const EngineRun reversed = reverse_run(engine);
  CHECK(reversed.q1 == -engine.q1);
  CHECK(reversed.work.value() == doctest::Approx(-engine.work.value()).epsilon(1e-12));
  CHECK(is_cyclic_on(reversed.process, reversed.machine));
}

TEST_CASE("finite tanks approach the ideal ratio") {
  double previous = 1.0;
  for (double cap : {1e4, 1e6, 1e8}) {
    const double t = measure_tau(Reservoir::finite_tank("H", KindParam(600.0), cap),
                                 Reservoir::finite_tank("C", KindParam(300.0), cap));
    const double err = std::fabs(t - 2.0);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("rational approximation") {
  CHECK(simplest_within(2.0, 1e-9, 1000000).num == 2);
  CHECK(simplest_within(2.0, 1e-9, 1000000).den == 1);
  const Rational p = simplest_within(M_PI, 1e-9, 1000000);
  const Rational q = brute_force(M_PI, 1e-9, 1000000);
  CHECK(p.den == q.den);
  CHECK(p.num == q.num);
  CHECK(std::fabs(static_cast<double>(p.num) / static_cast<double>(p.den) - M_PI) < 1e-9 * M_PI);
  CHECK(simplest_within(M_PI, 1e-15, 1000).den == 0);
  CHECK_THROWS_AS(simplest_within(-1.0, 1e-9, 10), std::invalid_argument);

  test::Gen gen(17);
  for (int i = 0; i < 40; ++i) {
    const double x = gen.log_uniform(1e-3, 1e3);
    const Rational a = simplest_within(x, 1e-6, 20000);
    const Rational b = brute_force(x, 1e-6, 20000);
    INFO("x=" << x);
    CHECK(a.den == b.den);
    CHECK(a.num == b.num);
  }
}

TEST_CASE("copy scaling") {
  const EngineRun base = build_carnot_cycle(MachineConfig{}, ideal("H", 600.0), ideal("C", 300.0));
  const CopyScaling s = scale_engines(with_q2(base, -100.0), with_q2(base, -50.0));
  CHECK(s.k == 1);
  CHECK(s.l == 2);
  const CopyScaling same = scale_engines(base, base);
  CHECK(same.k == 1);
  CHECK(same.l == 1);
  const CopyScaling pi = scale_engines(with_q2(base, -M_PI), with_q2(base, -1.0));
  CHECK(std::fabs(static_cast<double>(pi.k) * M_PI - static_cast<double>(pi.l)) < 1e-9 * pi.k * M_PI);
  CHECK(pi.k <= 1000000);
  CHECK_THROWS_AS(scale_engines(with_q2(base, 0.0), base), EngineError);
}

TEST_CASE("coupling an engine against its own reverse cancels") {
  const Reservoir h = ideal("H", 600.0);
  const Reservoir c = ideal("C", 300.0);
  const EngineRun run = build_carnot_cycle(MachineConfig{}, h, c);
  const CoupledMachine m = couple_against_reverse(run, reverse_run(run));
  CHECK(std::fabs(m.net_heat.value()) < 1e-9 * run.q1.value());
  CHECK(is_cyclic_on(m.process, m.machine));
  CHECK_FALSE(m.machine.contains(m.survivor.leaf().id));
}

TEST_CASE("lossy engine coupled against a reversed reversible one") {
  const Reservoir h = ideal("H", 600.0);
  const Reservoir c = ideal("C", 300.0);
  const MachineConfig cfg;
  const EngineRun lossy = build_lossy_cycle(cfg, h, c, 0.1);
  CHECK_FALSE(lossy.reversible);
  CHECK(-lossy.q1.value() / lossy.q2.value() < 2.0);
  const EngineRun matched = build_carnot_cycle_for_heat(cfg.gas, h.fresh_copy("H'"), c.fresh_copy("C'"), cfg.v_a,
                                                        HeatSide::second, -lossy.q2);
  CHECK(rel_err(matched.q2.value(), lossy.q2.value()) < 1e-12);
  const CoupledMachine m = couple_against_reverse(lossy, reverse_run(matched));
  CHECK(m.scaling.k == 1);
  CHECK(m.scaling.l == 1);
  CHECK(m.net_heat < Energy(0.0));
  CHECK(is_cyclic_on(m.process, m.machine));
  CHECK(work_of(m.process, m.machine).value() == doctest::Approx(-m.net_heat.value()).epsilon(1e-9));
  CHECK_THROWS_AS(couple_against_reverse(lossy, matched), EngineError);
}

TEST_CASE("copy counts above one are materialized") {
  const Reservoir h = ideal("H", 600.0);
  const Reservoir c = ideal("C", 300.0);
  const MachineConfig cfg;
  const EngineRun big = build_carnot_cycle_for_heat(cfg.gas, h, c, cfg.v_a, HeatSide::second, Energy(2000.0));
  const EngineRun small =
      build_carnot_cycle_for_heat(cfg.gas, h.fresh_copy("H'"), c.fresh_copy("C'"), cfg.v_a, HeatSide::second, Energy(1000.0));
  const CoupledMachine m = couple_against_reverse(big, reverse_run(small));
  CHECK(m.scaling.k == 1);
  CHECK(m.scaling.l == 2);
  CHECK(std::fabs(m.net_heat.value()) < 1e-9 * 4000.0);
  CHECK(is_cyclic_on(m.process, m.machine));
}

TEST_CASE("chaining engines multiplies ratios") {
  const Reservoir a = ideal("A", 600.0);
  const Reservoir b = ideal("B", 300.0);
  const Reservoir c = ideal("C", 200.0);
  const EngineRun ab = build_carnot_cycle(MachineConfig{}, a, b);
  const EngineRun bc = build_carnot_cycle_for_heat(GasSpec::diatomic(3.0), b.fresh_copy("B'"), c, Volume(0.004),
                                                   HeatSide::first, -ab.q2);
  const EngineRun ac = chain_engines(ab, bc);
  CHECK(rel_err(-ac.q1.value() / ac.q2.value(), 3.0) < 1e-9);
  CHECK(ac.q1 == ab.q1);
  CHECK(ac.q2 == bc.q2);
  CHECK(rel_err(ac.work.value(), (ab.work + bc.work).value()) < 1e-12);
  CHECK(is_cyclic_on(ac.process, ac.machine));
  CHECK_FALSE(ac.machine.contains(a.leaf().id));
  CHECK_FALSE(ac.machine.contains(c.leaf().id));

  const EngineRun unmatched = build_carnot_cycle(GasSpec::monatomic(), b.fresh_copy("B''"), c.fresh_copy("C'"), Volume(0.01),
                                                  Volume(0.03));
  CHECK_THROWS_WITH_AS(chain_engines(ab, unmatched), doctest::Contains("unmatched heats"), EngineError);
  CHECK_THROWS_AS(chain_engines(ab, build_carnot_cycle(MachineConfig{}, ideal("X", 450.0), c)), EngineError);
}

TEST_CASE("temperatures") {
  const Reservoir ref = ideal("R", 300.0);
  const std::vector<Reservoir> rs{ideal("A", 450.0), ref, ideal("B", 200.0)};
  const TemperatureAssignment t = assign_temperatures(rs, ref, 300.0);
  CHECK(t.temps.at("R") == 300.0);
  CHECK(t.temps.at("A") == doctest::Approx(450.0).epsilon(1e-9));
  CHECK(t.temps.at("B") == doctest::Approx(200.0).epsilon(1e-9));
  CHECK_THROWS_AS(assign_temperatures(rs, ref, 0.0), std::invalid_argument);

  // Re-anchoring rescales everything by one factor.
  const TemperatureAssignment u = assign_temperatures(rs, rs[0], 1.0);
  const double factor = u.temps.at("R") / t.temps.at("R");
  for (const auto& [name, temp] : t.temps) CHECK(rel_err(u.temps.at(name) / temp, factor) < 1e-9);
}

TEST_CASE("derived temperature reproduces the hidden scale") {
  const std::vector<Reservoir> rs{ideal("A", 123.0), ideal("B", 456.0), ideal("C", 789.0), ideal("D", 1000.0)};
  const TemperatureAssignment t = assign_temperatures(rs, rs[1], 1.0);
  const double ratio = t.temps.at("A") / testing::hidden_scale(rs[0]);
  for (const auto& r : rs) CHECK(rel_err(t.temps.at(r.label()) / testing::hidden_scale(r), ratio) < 1e-9);
}

TEST_CASE("equilibrium") {
  const Reservoir a = ideal("A", 300.0);
  const Reservoir b = ideal("B", 600.0);
  CHECK(in_equilibrium(a, a));
  CHECK(in_equilibrium(a, a.fresh_copy("A'")));
  CHECK_FALSE(in_equilibrium(a, b));
  CHECK(in_equilibrium(a, b) == in_equilibrium(b, a));
  CHECK(in_equilibrium(a, ideal("A2", 300.0 * (1.0 + 1e-12))));
  CHECK_THROWS_AS(in_equilibrium(a, b, 0.0), std::invalid_argument);
}

TEST_CASE("tau table") {
  const TauTable t = measure_all({ideal("A", 300.0), ideal("B", 600.0)});
  CHECK(t.entries().size() == 4);
  REQUIRE(t.find("B", "A"));
  CHECK(*t.find("B", "A") == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(t.find("A", "Z"));
}
