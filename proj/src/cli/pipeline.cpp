#include "axitherm/cli/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

#include "axitherm/axioms/checks.hpp"
#include "axitherm/carnot/tau.hpp"
#include "axitherm/simd/quadrature.hpp"

namespace axitherm::cli {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct World {
  const Scenario& scenario;
  std::uint64_t seed;
  CheckOptions options;
  std::map<std::string, Reservoir> reservoirs;
  std::vector<Reservoir> ordered;

  World(const Scenario& s, const RunOptions& o) : scenario(s), seed(o.seed.value_or(s.seed)) {
    options.tolerance = o.tolerance.value_or(s.tolerance);
    options.machine.quad.panels = o.steps.value_or(s.steps);
    if (s.machine.gas) options.machine.gas = s.find_gas(*s.machine.gas)->spec;
    options.machine.v_a = Volume(s.machine.v_a);
    options.machine.v_b = Volume(s.machine.v_b);
    for (const auto& r : s.reservoirs) {
      Reservoir made = r.model == ReservoirModel::ideal
                           ? Reservoir::ideal(r.name, KindParam(r.theta))
                           : Reservoir::finite_tank(r.name, KindParam(r.theta), *r.heat_capacity, r.window);
      reservoirs.emplace(r.name, made);
      ordered.push_back(made);
    }
  }

  const Reservoir& reservoir(const std::string& name) const { return reservoirs.at(name); }

  std::vector<Reservoir> reservoir_list(const json& params) const {
    if (!params.contains("reservoirs")) return ordered;
    std::vector<Reservoir> out;
    for (const auto& n : params.at("reservoirs")) out.push_back(reservoir(n.get<std::string>()));
    return out;
  }

  std::uint64_t seed_for(const std::string& id) const { return seed ^ fnv1a(id); }

  EngineRun engine(const EngineDecl& e) const {
    MachineConfig cfg = options.machine;
    cfg.gas = scenario.find_gas(e.gas)->spec;
    cfg.v_a = Volume(e.v_a);
    cfg.v_b = Volume(e.v_b);
    const Reservoir& hot = reservoir(e.hot);
    const Reservoir& cold = reservoir(e.cold);
    return e.loss_fraction ? build_lossy_cycle(cfg, hot, cold, *e.loss_fraction, e.name)
                           : build_carnot_cycle(cfg, hot, cold, e.name);
  }
};

CheckReport run_check(const World& w, const CheckDecl& c) {
  const json& p = c.params;
  const std::uint64_t seed = w.seed_for(c.id);
  if (c.id == "first_law") {
    const GasSpec spec = p.contains("gas") ? w.scenario.find_gas(p.at("gas").get<std::string>())->spec
                                           : w.options.machine.gas;
    return check_first_law(spec, p.value("samples", std::size_t{100}), seed, w.options);
  }
  if (c.id == "second_law") {
    return check_kelvin_probe(w.reservoir(p.at("reservoir").get<std::string>()),
                              w.reservoir(p.at("partner").get<std::string>()), w.options);
  }
  if (c.id == "lemma1") {
    return check_lemma1(w.engine(*w.scenario.find_engine(p.at("engine").get<std::string>())), w.options);
  }
  if (c.id == "lemma2") {
    const auto rs = w.reservoir_list(p);
    std::vector<std::pair<std::string, CheckReport>> parts;
    for (const auto& a : rs) {
      for (const auto& b : rs) {
        for (const auto& d : rs) {
          parts.emplace_back(a.label() + "," + b.label() + "," + d.label(), check_lemma2({a, b, d}, w.options));
        }
      }
    }
    CheckReport out = combine("lemma2", parts);
    // Per-triple tau observations would swamp the report; keep the count.
    out.observations = {{"triples", static_cast<double>(parts.size())}};
    return out;
  }
  if (c.id == "carnot_bound") {
    std::vector<double> losses{1e-2, 1e-4, 1e-6};
    if (p.contains("loss")) {
      losses.clear();
      if (p.at("loss").is_array()) {
        for (const auto& x : p.at("loss")) losses.push_back(x.get<double>());
      } else {
        losses.push_back(p.at("loss").get<double>());
      }
    }
    std::vector<std::pair<std::string, CheckReport>> parts;
    for (const double loss : losses) {
      parts.emplace_back("loss=" + fmt(loss),
                         check_carnot_bound(loss, w.reservoir(p.at("hot").get<std::string>()),
                                            w.reservoir(p.at("cold").get<std::string>()),
                                            p.value("trials", std::size_t{5}), seed, w.options));
    }
    return combine("carnot_bound", parts);
  }
  if (c.id == "zeroth_law") return check_zeroth_law(w.reservoir_list(p), w.options);
  if (c.id == "reservoir_postulates") {
    std::vector<std::pair<std::string, CheckReport>> parts;
    for (const auto& r : w.reservoir_list(p)) {
      parts.emplace_back(r.label(), check_reservoir_postulates(r, p.value("trials", std::size_t{100}), seed, w.options));
    }
    return combine("reservoir_postulates", parts);
  }
  throw ScenarioError("/checks", "unknown check id '" + c.id + "'");
}

std::vector<CheckDecl> selected_checks(const Scenario& s, const std::vector<std::string>& only) {
  if (only.empty()) return s.checks;
  std::vector<CheckDecl> out;
  for (const auto& id : only) {
    const auto& known = check_ids();
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw ScenarioError("--only", "unknown check id '" + id + "'");
    }
    const auto it = std::find_if(s.checks.begin(), s.checks.end(), [&](const CheckDecl& c) { return c.id == id; });
    if (it == s.checks.end()) throw ScenarioError("--only", "check '" + id + "' is not declared in the scenario");
    if (std::none_of(out.begin(), out.end(), [&](const CheckDecl& c) { return c.id == id; })) out.push_back(*it);
  }
  return out;
}

json run_json(const EngineRun& r) {
  return json{{"Q1", r.q1.value()},
              {"Q2", r.q2.value()},
              {"W", r.work.value()},
              {"ratio", -r.q1.value() / r.q2.value()},
              {"reversible", r.reversible},
              {"cyclic", is_cyclic_on(r.process, r.machine)}};
}

void render_check(std::ostringstream& out, const CheckReport& r) {
  std::string status(status_name(r.status));
  std::transform(status.begin(), status.end(), status.begin(), ::toupper);
  out << "[" << status << "] " << r.check_id << "\n";
  if (!r.note.empty()) out << "  " << r.note << "\n";
  for (const auto& res : r.residuals) {
    out << "  " << (res.ok() ? "ok   " : "FAIL ") << res.name << " = " << fmt(res.value)
        << (res.strict ? " < " : " <= ") << fmt(res.tolerance) << "\n";
  }
}

}  // namespace

RunResult run(const Scenario& scenario, const RunOptions& options) {
  const World world(scenario, options);
  RunResult result;
  json report{{"schema", 1},
              {"seed", world.seed},
              {"settings",
               {{"tolerance", world.options.tolerance},
                {"steps", world.options.machine.quad.panels},
                {"quadrature_isa", std::string(simd::isa_name(simd::active_isa()))}}}};
  std::ostringstream text;

  const bool want_checks = options.mode != Mode::derive_temp;
  const bool want_temps = options.mode != Mode::check;

  if (want_temps) {
    const std::optional<Anchor> anchor = options.anchor ? options.anchor : scenario.anchor;
    if (anchor && !scenario.find_reservoir(anchor->reservoir)) {
      throw ScenarioError("--anchor", "unknown reservoir '" + anchor->reservoir + "'");
    }
    if (!anchor && options.mode == Mode::derive_temp) {
      throw ScenarioError("--anchor", "no anchor given (flag or scenario field)");
    }
    if (world.ordered.empty() && options.mode == Mode::derive_temp) {
      throw ScenarioError("/reservoirs", "no reservoirs declared");
    }

    const TauTable table = measure_all(world.ordered, world.options.machine);
    json taus = json::array();
    for (const auto& [key, entry] : table.entries()) {
      json item = run_json(entry.run);
      item["first"] = key.first;
      item["second"] = key.second;
      item["tau"] = entry.tau;
      taus.push_back(std::move(item));
    }
    report["tau_table"] = std::move(taus);

    if (anchor) {
      const Reservoir& ref = world.reservoir(anchor->reservoir);
      TemperatureAssignment temps;
      temps.reference = ref.label();
      temps.t_ref = anchor->t_ref;
      for (const auto& r : world.ordered) {
        temps.temps[r.label()] = r.leaf() == ref.leaf() ? anchor->t_ref : *table.find(r.label(), ref.label()) * anchor->t_ref;
      }
      report["temperatures"] = json{{"reference", temps.reference}, {"T_ref", temps.t_ref}, {"T", temps.temps}};
      text << "temperatures (anchor " << temps.reference << " = " << fmt(temps.t_ref) << " K)\n";
      for (const auto& r : world.ordered) text << "  " << r.label() << "  " << fmt(temps.temps.at(r.label())) << "\n";
    }
  }

  if (options.mode == Mode::report && !scenario.engines.empty()) {
    json engines = json::object();
    for (const auto& e : scenario.engines) engines[e.name] = run_json(world.engine(e));
    report["engines"] = std::move(engines);
  }

  if (want_checks) {
    std::vector<CheckReport> reports;
    for (const auto& c : selected_checks(scenario, options.only)) reports.push_back(run_check(world, c));
    std::sort(reports.begin(), reports.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
    json checks = json::array();
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : reports) {
      checks.push_back(to_json(r));
      render_check(text, r);
      pass += r.status == CheckStatus::pass;
      fail += r.status == CheckStatus::fail;
      skip += r.status == CheckStatus::skipped;
    }
    report["checks"] = std::move(checks);
    report["summary"] = json{{"pass", pass}, {"fail", fail}, {"skipped", skip}};
    text << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
    result.exit_code = fail > 0 ? 1 : 0;
  }

  if (options.reveal_hidden) {
    json hidden = json::object();
    for (const auto& r : scenario.reservoirs) hidden[r.name] = r.theta;
    report["hidden_theta"] = std::move(hidden);
  }

  result.report = std::move(report);
  result.text = text.str();
  return result;
}

std::string machine_text(const json& report) { return report.dump(2) + "\n"; }

}  // namespace axitherm::cli
