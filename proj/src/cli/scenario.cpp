#include "axitherm/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace axitherm::cli {

using nlohmann::json;

namespace {

template <class T>
const T* find_named(const std::vector<T>& items, const std::string& name) {
  const auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.name == name; });
  return it == items.end() ? nullptr : &*it;
}

// Typed field access on one JSON object, with pointer-style paths in errors.
class Fields {
 public:
  Fields(const json& j, std::string path, std::set<std::string> allowed, Parsed& out, bool strict)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ScenarioError(path_.empty() ? "/" : path_, "expected an object");
    for (const auto& [key, value] : j.items()) {
      if (allowed.count(key)) continue;
      if (strict) throw ScenarioError(at(key), "unknown field");
      out.warnings.push_back(at(key) + ": unknown field ignored");
    }
  }

  std::string at(const std::string& key) const { return path_ + "/" + key; }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const {
    if (!has(key)) throw ScenarioError(at(key), "missing required field");
    return j_.at(key);
  }

  std::string text(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_string() || v.get<std::string>().empty()) throw ScenarioError(at(key), "expected a nonempty string");
    return v.get<std::string>();
  }

  double number(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number()) throw ScenarioError(at(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ScenarioError(at(key), "expected a finite number");
    return x;
  }

  double positive(const std::string& key) const {
    const double x = number(key);
    if (!(x > 0.0)) throw ScenarioError(at(key), "must be positive");
    return x;
  }

  std::uint64_t count(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      throw ScenarioError(at(key), "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::vector<std::string> names(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array()) throw ScenarioError(at(key), "expected an array of names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) throw ScenarioError(at(key) + "/" + std::to_string(i), "expected a string");
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  const json& array(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array()) throw ScenarioError(at(key), "expected an array");
    return v;
  }

 private:
  const json& j_;
  std::string path_;
};

template <class T>
void require_unique(const std::vector<T>& items, const std::string& section) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!seen.insert(items[i].name).second) {
      throw ScenarioError("/" + section + "/" + std::to_string(i) + "/name", "duplicate name '" + items[i].name + "'");
    }
  }
}

GasDecl parse_gas(const json& j, const std::string& path, Parsed& out, bool strict) {
  Fields f(j, path, {"name", "n", "c_v", "gamma"}, out, strict);
  const std::string name = f.text("name");
  const double n = f.positive("n");
  if (f.has("c_v") == f.has("gamma")) throw ScenarioError(path, "give exactly one of c_v and gamma");
  if (f.has("c_v")) return GasDecl{name, GasSpec(n, f.positive("c_v"))};
  const double gamma = f.number("gamma");
  if (!(gamma > 1.0)) throw ScenarioError(f.at("gamma"), "must exceed 1");
  return GasDecl{name, GasSpec::from_gamma(n, gamma)};
}

ReservoirDecl parse_reservoir(const json& j, const std::string& path, Parsed& out, bool strict) {
  Fields f(j, path, {"name", "model", "theta", "C", "window"}, out, strict);
  ReservoirDecl r;
  r.name = f.text("name");
  r.theta = f.positive("theta");
  const std::string model = f.has("model") ? f.text("model") : "ideal";
  if (model == "ideal") {
    r.model = ReservoirModel::ideal;
    if (f.has("C") || f.has("window")) throw ScenarioError(path, "C and window apply to finite_tank only");
  } else if (model == "finite_tank") {
    r.model = ReservoirModel::finite_tank;
    r.heat_capacity = f.positive("C");
    if (f.has("window")) {
      Fields w(f.raw("window"), f.at("window"), {"min", "max"}, out, strict);
      r.window = EnergyWindow{Energy(w.number("min")), Energy(w.number("max"))};
      const Energy e0(kReservoirReferenceEnergy);
      if (!(r.window->min <= e0 && e0 <= r.window->max)) {
        throw ScenarioError(f.at("window"), "window must contain the initial energy " + std::to_string(e0.value()));
      }
    }
  } else {
    throw ScenarioError(f.at("model"), "expected 'ideal' or 'finite_tank'");
  }
  return r;
}

EngineDecl parse_engine(const json& j, const std::string& path, Parsed& out, bool strict) {
  Fields f(j, path, {"name", "gas", "hot", "cold", "V_a", "V_b", "loss_fraction"}, out, strict);
  EngineDecl e{f.text("name"), f.text("gas"), f.text("hot"), f.text("cold"), f.positive("V_a"), f.positive("V_b"), {}};
  if (!(e.v_b > e.v_a)) throw ScenarioError(f.at("V_b"), "must exceed V_a");
  if (e.hot == e.cold) throw ScenarioError(f.at("cold"), "hot and cold must be different reservoirs");
  if (f.has("loss_fraction")) {
    const double loss = f.number("loss_fraction");
    if (!(loss >= 0.0 && loss < 1.0)) throw ScenarioError(f.at("loss_fraction"), "must lie in [0, 1)");
    if (loss > 0.0) e.loss_fraction = loss;
  }
  return e;
}

void check_reservoir_name(const Scenario& s, const std::string& name, const std::string& path) {
  if (!s.find_reservoir(name)) throw ScenarioError(path, "unknown reservoir '" + name + "'");
}

// Allowed parameters per check id, validated against the declared components.
void validate_check(const Scenario& s, const CheckDecl& c, const std::string& path, Parsed& out, bool strict) {
  const std::string pp = path + "/params";
  auto reservoir_list = [&](const Fields& f, const std::string& key) {
    if (!f.has(key)) return;
    const auto list = f.names(key);
    for (std::size_t i = 0; i < list.size(); ++i) check_reservoir_name(s, list[i], f.at(key) + "/" + std::to_string(i));
  };
  auto positive_count = [&](const Fields& f, const std::string& key) {
    if (f.has(key) && f.count(key) == 0) throw ScenarioError(f.at(key), "must be at least 1");
  };

  if (c.id == "first_law") {
    Fields f(c.params, pp, {"gas", "samples"}, out, strict);
    if (f.has("gas") && !s.find_gas(f.text("gas"))) throw ScenarioError(f.at("gas"), "unknown gas");
    positive_count(f, "samples");
  } else if (c.id == "second_law") {
    Fields f(c.params, pp, {"reservoir", "partner"}, out, strict);
    check_reservoir_name(s, f.text("reservoir"), f.at("reservoir"));
    check_reservoir_name(s, f.text("partner"), f.at("partner"));
    if (f.text("reservoir") == f.text("partner")) throw ScenarioError(f.at("partner"), "must differ from reservoir");
  } else if (c.id == "lemma1") {
    Fields f(c.params, pp, {"engine"}, out, strict);
    if (!s.find_engine(f.text("engine"))) throw ScenarioError(f.at("engine"), "unknown engine");
  } else if (c.id == "lemma2" || c.id == "zeroth_law") {
    Fields f(c.params, pp, {"reservoirs"}, out, strict);
    reservoir_list(f, "reservoirs");
  } else if (c.id == "carnot_bound") {
    Fields f(c.params, pp, {"hot", "cold", "loss", "trials"}, out, strict);
    check_reservoir_name(s, f.text("hot"), f.at("hot"));
    check_reservoir_name(s, f.text("cold"), f.at("cold"));
    if (f.has("loss")) {
      const json& loss = f.raw("loss");
      const json list = loss.is_array() ? loss : json::array({loss});
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (!list[i].is_number() || !(list[i].get<double>() > 0.0 && list[i].get<double>() < 1.0)) {
          throw ScenarioError(f.at("loss") + (loss.is_array() ? "/" + std::to_string(i) : ""),
                              "loss fractions must lie in (0, 1)");
        }
      }
    }
    positive_count(f, "trials");
  } else if (c.id == "reservoir_postulates") {
    Fields f(c.params, pp, {"reservoirs", "trials"}, out, strict);
    reservoir_list(f, "reservoirs");
    positive_count(f, "trials");
  }
}

}  // namespace

const GasDecl* Scenario::find_gas(const std::string& name) const { return find_named(gases, name); }
const ReservoirDecl* Scenario::find_reservoir(const std::string& name) const { return find_named(reservoirs, name); }
const EngineDecl* Scenario::find_engine(const std::string& name) const { return find_named(engines, name); }

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"carnot_bound", "first_law",  "lemma1",    "lemma2",
                                            "reservoir_postulates", "second_law", "zeroth_law"};
  return ids;
}

Parsed parse_scenario(const json& doc, bool strict) {
  Parsed out;
  Scenario& s = out.scenario;
  Fields top(doc, "",
             {"schema", "seed", "tolerance", "steps", "machine", "gases", "reservoirs", "engines", "checks", "anchor"},
             out, strict);

  if (!top.has("schema")) throw ScenarioError("/schema", "missing required field");
  if (!top.raw("schema").is_number_integer() || top.raw("schema").get<int>() != 1) {
    throw ScenarioError("/schema", "unsupported schema version (expected 1)");
  }
  if (top.has("seed")) s.seed = top.count("seed");
  if (top.has("tolerance")) s.tolerance = top.positive("tolerance");
  if (top.has("steps")) {
    s.steps = top.count("steps");
    if (s.steps < 2 || s.steps % 2 != 0) throw ScenarioError("/steps", "must be even and at least 2");
  }

  if (top.has("gases")) {
    const json& list = top.array("gases");
    for (std::size_t i = 0; i < list.size(); ++i) s.gases.push_back(parse_gas(list[i], "/gases/" + std::to_string(i), out, strict));
  }
  if (top.has("reservoirs")) {
    const json& list = top.array("reservoirs");
    for (std::size_t i = 0; i < list.size(); ++i) {
      s.reservoirs.push_back(parse_reservoir(list[i], "/reservoirs/" + std::to_string(i), out, strict));
    }
  }
  if (top.has("engines")) {
    const json& list = top.array("engines");
    for (std::size_t i = 0; i < list.size(); ++i) {
      s.engines.push_back(parse_engine(list[i], "/engines/" + std::to_string(i), out, strict));
    }
  }
  require_unique(s.gases, "gases");
  require_unique(s.reservoirs, "reservoirs");
  require_unique(s.engines, "engines");

  for (std::size_t i = 0; i < s.engines.size(); ++i) {
    const auto& e = s.engines[i];
    const std::string path = "/engines/" + std::to_string(i);
    if (!s.find_gas(e.gas)) throw ScenarioError(path + "/gas", "unknown gas '" + e.gas + "'");
    check_reservoir_name(s, e.hot, path + "/hot");
    check_reservoir_name(s, e.cold, path + "/cold");
  }

  if (top.has("machine")) {
    Fields m(top.raw("machine"), "/machine", {"gas", "V_a", "V_b"}, out, strict);
    if (m.has("gas")) {
      s.machine.gas = m.text("gas");
      if (!s.find_gas(*s.machine.gas)) throw ScenarioError("/machine/gas", "unknown gas '" + *s.machine.gas + "'");
    }
    if (m.has("V_a")) s.machine.v_a = m.positive("V_a");
    if (m.has("V_b")) s.machine.v_b = m.positive("V_b");
    if (!(s.machine.v_b > s.machine.v_a)) throw ScenarioError("/machine/V_b", "must exceed V_a");
  }

  if (top.has("anchor")) {
    Fields a(top.raw("anchor"), "/anchor", {"reservoir", "T_ref"}, out, strict);
    s.anchor = Anchor{a.text("reservoir"), a.positive("T_ref")};
    check_reservoir_name(s, s.anchor->reservoir, "/anchor/reservoir");
  }

  if (top.has("checks")) {
    const json& list = top.array("checks");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "/checks/" + std::to_string(i);
      Fields f(list[i], path, {"id", "params"}, out, strict);
      CheckDecl c{f.text("id"), f.has("params") ? f.raw("params") : json::object()};
      const auto& known = check_ids();
      if (std::find(known.begin(), known.end(), c.id) == known.end()) {
        std::ostringstream msg;
        msg << "unknown check id '" << c.id << "' (known:";
        for (const auto& k : known) msg << ' ' << k;
        msg << ")";
        throw ScenarioError(path + "/id", msg.str());
      }
      if (!seen.insert(c.id).second) throw ScenarioError(path + "/id", "duplicate check id '" + c.id + "'");
      validate_check(s, c, path, out, strict);
      s.checks.push_back(std::move(c));
    }
  }
  return out;
}

Parsed load_scenario(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path.string(), "cannot open scenario file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(path.string(), e.what());
  }
  return parse_scenario(doc, strict);
}

Anchor parse_anchor(const std::string& text) {
  Anchor a;
  bool have_ref = false, have_t = false;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ScenarioError("--anchor", "expected ref=NAME,T=VALUE");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "ref") {
      a.reservoir = value;
      have_ref = !value.empty();
    } else if (key == "T") {
      try {
        std::size_t used = 0;
        a.t_ref = std::stod(value, &used);
        have_t = used == value.size() && a.t_ref > 0.0 && std::isfinite(a.t_ref);
      } catch (const std::exception&) {
        have_t = false;
      }
      if (!have_t) throw ScenarioError("--anchor", "T must be a positive number");
    } else {
      throw ScenarioError("--anchor", "unknown key '" + key + "'");
    }
  }
  if (!have_ref || !have_t) throw ScenarioError("--anchor", "expected ref=NAME,T=VALUE");
  return a;
}

}  // namespace axitherm::cli
