#include "axitherm/reservoir/reservoir.hpp"

#include <cmath>
#include <limits>

namespace axitherm {

KindParam::KindParam(double scale) : scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("reservoir kind must be positive");
}

std::string_view model_name(ReservoirModel model) {
  return model == ReservoirModel::ideal ? "ideal" : "finite_tank";
}

Reservoir::Reservoir(Leaf leaf, KindParam kind, ReservoirModel model, Energy initial, double heat_capacity,
                     std::optional<EnergyWindow> window)
    : leaf_(std::move(leaf)),
      kind_(kind),
      model_(model),
      energy_(initial),
      reference_(initial),
      heat_capacity_(heat_capacity),
      window_(window) {}

Reservoir Reservoir::ideal(std::string label, KindParam kind, Energy initial) {
  return Reservoir(make_leaf(SystemKind::reservoir, std::move(label)), kind, ReservoirModel::ideal, initial,
                   std::numeric_limits<double>::infinity(), std::nullopt);
}

Reservoir Reservoir::finite_tank(std::string label, KindParam kind, double heat_capacity,
                                 std::optional<EnergyWindow> window, Energy initial) {
  if (!(heat_capacity > 0.0) || !std::isfinite(heat_capacity)) {
    throw std::invalid_argument("tank heat capacity must be positive and finite");
  }
  if (!window) {
    const double half = kTankWindowScale * std::sqrt(heat_capacity / kTankMolarHeatCapacity);
    window = EnergyWindow{initial - Energy(half), initial + Energy(half)};
  }
  if (!(window->min <= initial && initial <= window->max)) {
    throw std::invalid_argument("tank initial energy lies outside its window");
  }
  return Reservoir(make_leaf(SystemKind::reservoir, std::move(label)), kind, ReservoirModel::finite_tank, initial,
                   heat_capacity, window);
}

double Reservoir::heat_capacity() const { return heat_capacity_; }

bool Reservoir::same_kind(const Reservoir& other) const {
  return kind_ == other.kind_ && model_ == other.model_ &&
         (model_ == ReservoirModel::ideal ||
          (heat_capacity_ == other.heat_capacity_ && reference_ == other.reference_));
}

double Reservoir::scale_at(Energy e) const {
  if (model_ == ReservoirModel::ideal) return kind_.scale_;
  return kind_.scale_ + (e - reference_).value() / heat_capacity_;
}

Energy Reservoir::imposed_isotherm(const GasSpec& gas) const {
  return Energy(gas.moles() * kGasConstant * scale_at(energy_));
}

double Reservoir::drift_exponent(const GasSpec& gas) const {
  if (model_ == ReservoirModel::ideal) return 0.0;
  return gas.moles() * kGasConstant / (heat_capacity_ + gas.moles() * gas.molar_cv());
}

Reservoir Reservoir::with_energy(Energy e) const {
  if (window_ && !(window_->min <= e && e <= window_->max)) {
    throw ReservoirError("reservoir approximation violated: " + leaf_.label + " left its energy window");
  }
  Reservoir out = *this;
  out.energy_ = e;
  return out;
}

Reservoir Reservoir::fresh_copy(std::string label) const {
  Reservoir out = *this;
  out.leaf_ = make_leaf(SystemKind::reservoir, std::move(label));
  out.energy_ = reference_;
  return out;
}

LedgerEntry Reservoir::ledger_entry() const { return LedgerEntry{leaf_, std::nullopt, state(), state(), Energy(0.0)}; }

Reservoir exchange_heat(const Reservoir& r, Energy q) { return r.with_energy(r.energy() + q); }

Reservoir invest_work(const Reservoir& r, Energy w) {
  if (w < Energy(0.0) && !r.permits_work_extraction()) {
    throw ReservoirError("second-kind perpetual motion attempt: no work can be extracted from " + r.label());
  }
  return r.with_energy(r.energy() + w);
}

MergeResult merge_copies(const Reservoir& a, const Reservoir& b, Energy q_a, Energy q_b) {
  if (!a.same_kind(b)) throw ReservoirError("postulate (iii) requires identical reservoirs");
  if (a.leaf() == b.leaf()) throw ReservoirError("merge needs two distinct copies");
  const Energy total = q_a + q_b;
  Reservoir fresh = a.fresh_copy("merge(" + a.label() + "," + b.label() + ")");
  Reservoir fresh_after = exchange_heat(fresh, -total);
  return MergeResult{fresh, fresh_after, total, exchange_heat(a, q_a), exchange_heat(b, q_b)};
}

Segment work_investment_segment(const Reservoir& r, Energy w) {
  const Reservoir after = invest_work(r, w);
  LedgerEntry change = r.ledger_entry();
  change.out = after.state();
  change.work = w;
  return Segment{WorkInvestment{r.leaf().id, w}, {change}, false};
}

Segment heat_exchange_segment(const Reservoir& source, const Reservoir& sink, Energy q) {
  if (source.leaf() == sink.leaf()) throw ReservoirError("heat exchange needs two distinct reservoirs");
  LedgerEntry from = source.ledger_entry();
  LedgerEntry to = sink.ledger_entry();
  from.out = exchange_heat(source, -q).state();
  to.out = exchange_heat(sink, q).state();
  const bool same = source.same_kind(sink);
  return Segment{HeatExchange{source.leaf().id, sink.leaf().id, q, same}, {from, to}, same};
}

namespace {

// Restores `copy` to its process input state, drawing on `fresh`.
Energy restore(Process& p, const Reservoir& copy, Reservoir& fresh) {
  if (!p.participates(copy.leaf().id)) return Energy(0.0);
  const auto& e = p.entry(copy.leaf().id);
  const Energy start = std::get<ReservoirState>(e.in).energy;
  const Energy now = std::get<ReservoirState>(e.out).energy;
  const Energy amount = start - now;

  LedgerEntry from = fresh.ledger_entry();
  const Reservoir fresh_after = exchange_heat(fresh, -amount);
  from.out = fresh_after.state();
  LedgerEntry to = e;
  to.in = e.out;
  to.out = e.in;  // exact restoration
  to.work = Energy(0.0);
  p = concat(p, Process(Segment{HeatExchange{fresh.leaf().id, copy.leaf().id, amount, true}, {from, to}, true}));
  fresh = fresh_after;
  return amount;
}

}  // namespace

ProcessMerge merge_in_process(const Process& p, const Reservoir& a, const Reservoir& b,
                              const std::string& fresh_label) {
  if (!a.same_kind(b)) throw ReservoirError("postulate (iii) requires identical reservoirs");
  if (a.leaf() == b.leaf()) throw ReservoirError("merge needs two distinct copies");
  const Reservoir fresh = a.fresh_copy(fresh_label);
  Reservoir running = fresh;
  Process out = p;
  Energy supplied = restore(out, a, running);
  supplied += restore(out, b, running);
  return ProcessMerge{std::move(out), fresh, supplied};
}

Reservoir reservoir_after(const Process& p, const Reservoir& r) {
  if (!p.participates(r.leaf().id)) return r;
  return r.with_energy(std::get<ReservoirState>(p.entry(r.leaf().id).out).energy);
}

}  // namespace axitherm
