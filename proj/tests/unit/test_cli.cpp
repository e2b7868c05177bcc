#include <doctest.h>

#include <filesystem>

#include "axitherm/cli/pipeline.hpp"

using namespace axitherm;
using namespace axitherm::cli;
using nlohmann::json;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(AXITHERM_TEST_DATA) / name; }

json minimal() {
  return json::parse(R"({
    "schema": 1,
    "seed": 3,
    "reservoirs": [{"name": "A", "theta": 300}, {"name": "B", "theta": 450}, {"name": "C", "theta": 600}],
    "checks": [{"id": "zeroth_law"}]
  })");
}

std::string error_path(const json& doc, bool strict = true) {
  try {
    parse_scenario(doc, strict);
  } catch (const ScenarioError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("scenario parsing") {
  const Parsed p = parse_scenario(minimal());
  CHECK(p.scenario.reservoirs.size() == 3);
  CHECK(p.scenario.seed == 3);
  CHECK(p.warnings.empty());
  REQUIRE(p.scenario.find_reservoir("B"));
  CHECK(p.scenario.find_reservoir("B")->theta == 450.0);
  CHECK_FALSE(p.scenario.find_reservoir("Z"));
}

TEST_CASE("scenario errors carry a path") {
  json doc = minimal();
  doc["reservoirs"][1]["name"] = "A";
  CHECK(error_path(doc) == "/reservoirs/1/name");

  doc = minimal();
  doc["reservoirs"][2]["theta"] = -1;
  CHECK(error_path(doc) == "/reservoirs/2/theta");

  doc = minimal();
  doc["checks"][0]["id"] = "fourth_law";
  CHECK(error_path(doc) == "/checks/0/id");

  doc = minimal();
  doc["checks"].push_back({{"id", "lemma1"}, {"params", {{"engine", "nope"}}}});
  CHECK(error_path(doc).rfind("/checks/1", 0) == 0);

  doc = minimal();
  doc["schema"] = 7;
  CHECK(error_path(doc) == "/schema");

  CHECK_THROWS_AS(load_scenario(data("duplicate_names.json")), ScenarioError);
  CHECK_THROWS_AS(load_scenario(data("does_not_exist.json")), ScenarioError);
}

TEST_CASE("unknown fields") {
  json doc = minimal();
  doc["reservoirs"][0]["colour"] = "red";
  CHECK(error_path(doc) == "/reservoirs/0/colour");
  const Parsed lax = parse_scenario(doc, false);
  REQUIRE(lax.warnings.size() == 1);
  CHECK(lax.warnings[0].find("/reservoirs/0/colour") != std::string::npos);
  CHECK(load_scenario(data("unknown_field.json"), false).warnings.size() == 1);
}

TEST_CASE("anchor flag") {
  const Anchor a = parse_anchor("ref=R300,T=300");
  CHECK(a.reservoir == "R300");
  CHECK(a.t_ref == 300.0);
  CHECK(parse_anchor("T=1.5,ref=X").t_ref == 1.5);
  CHECK_THROWS_AS(parse_anchor("R300"), ScenarioError);
  CHECK_THROWS_AS(parse_anchor("ref=R300,T=-2"), ScenarioError);
  CHECK_THROWS_AS(parse_anchor("ref=R300,T=abc"), ScenarioError);
}

TEST_CASE("derive-temp recovers the anchored scale") {
  const Scenario s = load_scenario(data("full.json")).scenario;
  RunOptions o;
  o.mode = Mode::derive_temp;
  const RunResult r = run(s, o);
  CHECK(r.exit_code == 0);
  const json& t = r.report.at("temperatures").at("T");
  CHECK(t.at("R300").get<double>() == 300.0);
  CHECK(t.at("R600").get<double>() == doctest::Approx(600.0).epsilon(1e-9));
  CHECK(t.at("R200").get<double>() == doctest::Approx(200.0).epsilon(1e-9));
  CHECK_FALSE(r.report.contains("checks"));
  CHECK_FALSE(r.report.contains("hidden_theta"));

  o.anchor = Anchor{"R600", 1.0};
  CHECK(run(s, o).report.at("temperatures").at("T").at("R300").get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  o.anchor = Anchor{"R999", 1.0};
  CHECK_THROWS_AS(run(s, o), ScenarioError);
}

TEST_CASE("check selection and hidden values") {
  const Scenario s = parse_scenario(minimal()).scenario;
  RunOptions o;
  o.mode = Mode::check;
  const RunResult all = run(s, o);
  CHECK(all.exit_code == 0);
  CHECK(all.report.at("summary").at("pass") == 1);
  CHECK(all.text.find("[PASS] zeroth_law") != std::string::npos);

  o.only = {"first_law"};
  CHECK_THROWS_AS(run(s, o), ScenarioError);

  o.only.clear();
  o.reveal_hidden = true;
  CHECK(run(s, o).report.at("hidden_theta").at("B") == 450.0);
}

TEST_CASE("machine output is deterministic") {
  const Scenario s = load_scenario(data("tanks.json")).scenario;
  RunOptions o;
  o.mode = Mode::report;
  const std::string first = machine_text(run(s, o).report);
  CHECK(first == machine_text(run(s, o).report));
  o.seed = 12345;
  CHECK(machine_text(run(s, o).report).find("12345") != std::string::npos);
}
