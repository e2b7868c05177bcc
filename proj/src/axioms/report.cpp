#include "axitherm/axioms/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace axitherm {

using nlohmann::json;

std::string_view status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

CheckStatus status_from_name(std::string_view name) {
  if (name == "pass") return CheckStatus::pass;
  if (name == "fail") return CheckStatus::fail;
  if (name == "skipped") return CheckStatus::skipped;
  throw std::invalid_argument("unknown check status: " + std::string(name));
}

bool CheckReport::all_ok() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.ok(); });
}

CheckReport finish(CheckReport report, std::optional<json> witness_on_fail) {
  report.status = report.all_ok() ? CheckStatus::pass : CheckStatus::fail;
  if (report.status == CheckStatus::fail) {
    report.witness = witness_on_fail ? std::move(*witness_on_fail) : json{{"note", "no construction recorded"}};
  } else {
    report.witness.reset();
  }
  return report;
}

CheckReport skipped(std::string check_id, std::string reason) {
  CheckReport r;
  r.check_id = std::move(check_id);
  r.status = CheckStatus::skipped;
  r.note = std::move(reason);
  return r;
}

CheckReport combine(std::string check_id, const std::vector<std::pair<std::string, CheckReport>>& parts) {
  CheckReport out;
  out.check_id = std::move(check_id);
  std::size_t skipped_parts = 0;
  std::vector<std::string> notes;
  for (const auto& [label, part] : parts) {
    if (part.status == CheckStatus::skipped) {
      ++skipped_parts;
      notes.push_back(label + " skipped: " + part.note);
      continue;
    }
    for (const auto& r : part.residuals) {
      auto it = std::find_if(out.residuals.begin(), out.residuals.end(),
                             [&](const Residual& x) { return x.name == r.name; });
      if (it == out.residuals.end()) {
        out.residuals.push_back(r);
      } else if (r.value - r.tolerance > it->value - it->tolerance) {
        *it = r;
      }
    }
    for (const auto& o : part.observations) out.observations.push_back({label + ":" + o.name, o.value});
    if (part.status == CheckStatus::fail && !out.witness) {
      out.witness = nlohmann::json{{"part", label}, {"witness", part.witness.value_or(nlohmann::json())}};
      notes.push_back(label + " failed");
    }
  }
  out.observations.push_back({"parts", static_cast<double>(parts.size())});
  for (std::size_t i = 0; i < notes.size(); ++i) out.note += (i ? "; " : "") + notes[i];
  if (skipped_parts == parts.size()) {
    out.status = CheckStatus::skipped;
    out.witness.reset();
    return out;
  }
  const bool failed = out.witness.has_value();
  out.status = failed || !out.all_ok() ? CheckStatus::fail : CheckStatus::pass;
  if (out.status == CheckStatus::fail && !out.witness) out.witness = nlohmann::json{{"note", "no construction recorded"}};
  return out;
}

namespace {

// Non-finite values have no JSON encoding; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  throw std::invalid_argument("not a number: " + s);
}

}  // namespace

json to_json(const CheckReport& report) {
  json residuals = json::array();
  for (const auto& r : report.residuals) {
    json item{{"name", r.name}, {"value", number(r.value)}, {"tolerance", number(r.tolerance)}, {"ok", r.ok()}};
    if (r.strict) item["strict"] = true;
    residuals.push_back(std::move(item));
  }
  json out{{"check_id", report.check_id}, {"status", status_name(report.status)}, {"residuals", residuals}};
  if (!report.note.empty()) out["note"] = report.note;
  if (report.witness) out["witness"] = *report.witness;
  if (!report.observations.empty()) {
    json obs = json::array();
    for (const auto& o : report.observations) obs.push_back({{"name", o.name}, {"value", number(o.value)}});
    out["observations"] = std::move(obs);
  }
  return out;
}

CheckReport report_from_json(const json& j) {
  CheckReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.status = status_from_name(j.at("status").get<std::string>());
  for (const auto& item : j.at("residuals")) {
    r.residuals.push_back(Residual{item.at("name").get<std::string>(), read_number(item.at("value")),
                                   read_number(item.at("tolerance")), item.value("strict", false)});
  }
  r.note = j.value("note", std::string());
  if (j.contains("witness")) r.witness = j.at("witness");
  if (j.contains("observations")) {
    for (const auto& o : j.at("observations")) {
      r.observations.push_back(Observation{o.at("name").get<std::string>(), read_number(o.at("value"))});
    }
  }
  return r;
}

namespace {

json state_json(const LeafState& s) {
  if (const auto* g = std::get_if<GasState>(&s)) return json{{"p", g->p.value()}, {"V", g->v.value()}};
  return json{{"U", std::get<ReservoirState>(s).energy.value()}};
}

struct SegmentJson {
  const std::map<LeafId, std::string>& names;

  std::string name(LeafId id) const {
    const auto it = names.find(id);
    return it == names.end() ? std::string("?") : it->second;
  }

  json operator()(const IsothermalStep& s) const {
    return {{"gas", name(s.gas)},         {"reservoir", name(s.reservoir)}, {"V_in", s.v_in.value()},
            {"V_out", s.v_out.value()},   {"drift", s.drift_exponent},      {"work", s.work_quadrature.value()},
            {"work_exact", s.work_closed_form.value()}};
  }
  json operator()(const AdiabaticStep& s) const {
    return {{"gas", name(s.gas)},
            {"V_in", s.v_in.value()},
            {"V_out", s.v_out.value()},
            {"work", s.work_closed_form.value()},
            {"work_quadrature", s.work_quadrature.value()}};
  }
  json operator()(const FrictionStep& s) const { return {{"gas", name(s.gas)}, {"work", s.work.value()}}; }
  json operator()(const ThermalContact& s) const {
    return {{"gas", name(s.gas)}, {"reservoir", name(s.reservoir)}, {"heat_to_gas", s.heat_to_gas.value()}};
  }
  json operator()(const HeatExchange& s) const {
    return {{"source", name(s.source)}, {"sink", name(s.sink)}, {"heat", s.heat.value()}, {"same_kind", s.same_kind}};
  }
  json operator()(const WorkInvestment& s) const {
    return {{"reservoir", name(s.reservoir)}, {"work", s.work.value()}};
  }
};

}  // namespace

json serialize_process(const Process& p) {
  std::map<LeafId, std::string> names;
  for (const auto& leaf : p.participants()) names.emplace(leaf.id, leaf.label);

  json segments = json::array();
  for (const auto& seg : p.segments()) {
    json item = std::visit(SegmentJson{names}, seg.kind);
    item["type"] = segment_name(seg.kind);
    item["reversible"] = seg.reversible;
    segments.push_back(std::move(item));
  }
  json ledger = json::array();
  for (const auto& [id, e] : p.ledger()) {
    ledger.push_back({{"system", e.leaf.label},
                      {"kind", kind_name(e.leaf.kind)},
                      {"in", state_json(e.in)},
                      {"out", state_json(e.out)},
                      {"work", e.work.value()},
                      {"heat", ((internal_energy(e, e.out) - internal_energy(e, e.in)) - e.work).value()}});
  }
  // Ledger order follows ids; sort by label for a stable presentation.
  std::stable_sort(ledger.begin(), ledger.end(),
                   [](const json& a, const json& b) { return a["system"].get<std::string>() < b["system"].get<std::string>(); });
  return json{{"segments", segments}, {"ledger", ledger}};
}

}  // namespace axitherm
