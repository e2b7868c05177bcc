#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "axitherm/axioms/checks.hpp"
#include "axitherm/carnot/tau.hpp"
#include "axitherm/cli/pipeline.hpp"
#include "axitherm/reservoir/testing.hpp"

using namespace axitherm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Reservoir ideal(const std::string& name, double theta) { return Reservoir::ideal(name, KindParam(theta)); }

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double observation(const CheckReport& r, const std::string& name) {
  for (const auto& o : r.observations) {
    if (o.name == name) return o.value;
  }
  return std::nan("");
}

Outcome temperature_recovery() {
  const std::vector<Reservoir> rs{ideal("R200", 200.0), ideal("R300", 300.0), ideal("R450", 450.0),
                                  ideal("R600", 600.0)};
  const TemperatureAssignment t = assign_temperatures(rs, rs[1], 300.0);
  double worst = 0.0;
  for (const auto& r : rs) worst = std::max(worst, rel_err(t.temps.at(r.label()), testing::hidden_scale(r)));
  return {worst <= 1e-9, "max rel err " + sci(worst)};
}

Outcome machine_independence() {
  const Reservoir hot = ideal("H", 600.0);
  const Reservoir cold = ideal("C", 300.0);
  std::vector<MachineConfig> configs(5);
  configs[1].gas = GasSpec::diatomic(2.0);
  configs[2].gas = GasSpec::from_gamma(0.5, 1.2);
  configs[2].v_a = Volume(0.001);
  configs[2].v_b = Volume(0.1);
  configs[3].gas = GasSpec::from_gamma(3.0, 1.3);
  configs[3].v_b = Volume(0.011);
  configs[4].gas = GasSpec::monatomic(10.0);
  configs[4].v_a = Volume(0.5);
  configs[4].v_b = Volume(2.0);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& c : configs) {
    const double t = measure_tau(hot, cold, c);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  const double spread = (hi - lo) / lo;
  const double off = std::max(rel_err(lo, 2.0), rel_err(hi, 2.0));
  return {spread < 1e-9 && off <= 1e-9, "spread " + sci(spread) + ", |tau/2 - 1| " + sci(off)};
}

Outcome lemma2_triples() {
  const std::vector<Reservoir> rs{ideal("A", 200.0), ideal("B", 300.0), ideal("C", 450.0), ideal("D", 600.0)};
  int failed = 0;
  int total = 0;
  for (const auto& a : rs) {
    for (const auto& b : rs) {
      for (const auto& c : rs) {
        ++total;
        if (check_lemma2({a, b, c}).status != CheckStatus::pass) ++failed;
      }
    }
  }
  return {failed == 0, std::to_string(total - failed) + "/" + std::to_string(total) + " triples"};
}

Outcome carnot_bound() {
  const Reservoir hot = ideal("H", 600.0);
  const Reservoir cold = ideal("C", 300.0);
  const double tau = measure_tau(hot, cold);
  bool ok = true;
  double previous = 0.0;
  std::string detail = "ratios";
  for (double loss : {1e-2, 1e-4, 1e-6}) {
    const EngineRun run = build_lossy_cycle(MachineConfig{}, hot, cold, loss);
    const double ratio = -run.q1.value() / run.q2.value();
    char buf[48];
    std::snprintf(buf, sizeof buf, " %.10f", ratio);
    detail += buf;
    ok = ok && ratio < tau && ratio <= tau + 1e-9 && ratio > previous;
    ok = ok && check_carnot_bound(loss, hot, cold, 5, 1).status == CheckStatus::pass;
    previous = ratio;
  }
  return {ok, detail};
}

Outcome zeroth_law() {
  const Reservoir a = ideal("R300", 300.0);
  const Reservoir b = ideal("R600", 600.0);
  const std::vector<Reservoir> rs{a, b, ideal("R450", 450.0), a.fresh_copy("R300b"), b.fresh_copy("R600b"),
                                  ideal("R200", 200.0)};
  const CheckReport r = check_zeroth_law(rs);
  const double triples = observation(r, "triples");
  return {r.status == CheckStatus::pass && triples == 216.0,
          std::to_string(static_cast<int>(triples)) + " triples, " + r.note};
}

Outcome first_law() {
  const CheckReport r = check_first_law(GasSpec::diatomic(1.0), 100, 2024);
  double worst = 0.0;
  for (const auto& res : r.residuals) worst = std::max(worst, res.value);
  return {r.status == CheckStatus::pass, "100 samples, worst residual " + sci(worst)};
}

Outcome kelvin_probe() {
  const Reservoir hot = ideal("H", 600.0);
  const CheckReport broken = check_kelvin_probe(hot, testing::leaky_reservoir("L", KindParam(300.0)));
  const CheckReport sound = check_kelvin_probe(hot, ideal("C", 300.0));
  const bool ok = broken.status == CheckStatus::fail && broken.witness.has_value() && sound.status == CheckStatus::pass;
  return {ok, std::string("leaky ") + std::string(status_name(broken.status)) + (broken.witness ? " with witness" : "") +
                  ", sound " + std::string(status_name(sound.status))};
}

Outcome tank_convergence() {
  MachineConfig cfg;
  cfg.v_b = Volume(0.04);
  std::vector<double> xs, ys;
  for (double cap : {1e4, 1e6, 1e8}) {
    const double t = measure_tau(Reservoir::finite_tank("H", KindParam(600.0), cap),
                                 Reservoir::finite_tank("C", KindParam(300.0), cap), cfg);
    xs.push_back(std::log10(cap));
    ys.push_back(std::log10(std::fabs(t - 2.0)));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / 3.0;
    my += ys[i] / 3.0;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  char buf[48];
  std::snprintf(buf, sizeof buf, "slope %.4f", slope);
  return {std::fabs(slope + 1.0) <= 0.1, buf};
}

Outcome determinism() {
  const auto path = std::filesystem::path(AXITHERM_TEST_DATA) / "full.json";
  const cli::Scenario s = cli::load_scenario(path).scenario;
  cli::RunOptions o;
  o.mode = cli::Mode::report;
  const cli::RunResult first = cli::run(s, o);
  const cli::RunResult second = cli::run(s, o);
  const std::string a = cli::machine_text(first.report);
  const std::string b = cli::machine_text(second.report);
  return {a == b && first.exit_code == 0, std::to_string(a.size()) + " bytes, exit " + std::to_string(first.exit_code)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"derived temperatures match the hidden scale", temperature_recovery},
      {"heat ratio independent of the working machine", machine_independence},
      {"ratio is multiplicative over all triples", lemma2_triples},
      {"irreversible engines stay below the reversible ratio", carnot_bound},
      {"equilibrium is an equivalence relation", zeroth_law},
      {"work between states is path independent", first_law},
      {"work-extracting reservoir is caught", kelvin_probe},
      {"finite tanks converge as 1/C", tank_convergence},
      {"full report is byte-reproducible", determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d %s (%s)\n", out.pass ? "PASS" : "FAIL", index++, name.c_str(), out.detail.c_str());
    failures += out.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
