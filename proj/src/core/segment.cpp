#include "axitherm/core/segment.hpp"

#include <stdexcept>
#include <utility>

namespace axitherm {

Energy internal_energy(const LedgerEntry& entry, const LeafState& state) {
  if (const auto* gas = std::get_if<GasState>(&state)) {
    if (!entry.gas) throw std::logic_error("gas state recorded without a gas spec");
    return internal_energy(*entry.gas, *gas);
  }
  return std::get<ReservoirState>(state).energy;
}

std::string_view segment_name(const SegmentKind& kind) {
  struct Visitor {
    std::string_view operator()(const IsothermalStep&) const { return "isothermal"; }
    std::string_view operator()(const AdiabaticStep&) const { return "adiabatic"; }
    std::string_view operator()(const FrictionStep&) const { return "friction"; }
    std::string_view operator()(const ThermalContact&) const { return "thermal_contact"; }
    std::string_view operator()(const HeatExchange&) const { return "heat_exchange"; }
    std::string_view operator()(const WorkInvestment&) const { return "work_investment"; }
  };
  return std::visit(Visitor{}, kind);
}

std::vector<LeafId> touched_leaves(const SegmentKind& kind) {
  struct Visitor {
    std::vector<LeafId> operator()(const IsothermalStep& s) const { return {s.gas, s.reservoir}; }
    std::vector<LeafId> operator()(const AdiabaticStep& s) const { return {s.gas}; }
    std::vector<LeafId> operator()(const FrictionStep& s) const { return {s.gas}; }
    std::vector<LeafId> operator()(const ThermalContact& s) const { return {s.gas, s.reservoir}; }
    std::vector<LeafId> operator()(const HeatExchange& s) const { return {s.source, s.sink}; }
    std::vector<LeafId> operator()(const WorkInvestment& s) const { return {s.reservoir}; }
  };
  return std::visit(Visitor{}, kind);
}

namespace {

struct ReverseKind {
  SegmentKind operator()(IsothermalStep s) const {
    std::swap(s.v_in, s.v_out);
    s.work_quadrature = -s.work_quadrature;
    s.work_closed_form = -s.work_closed_form;
    return s;
  }
  SegmentKind operator()(AdiabaticStep s) const {
    std::swap(s.v_in, s.v_out);
    s.work_quadrature = -s.work_quadrature;
    s.work_closed_form = -s.work_closed_form;
    return s;
  }
  SegmentKind operator()(FrictionStep s) const {
    s.work = -s.work;
    return s;
  }
  SegmentKind operator()(ThermalContact s) const {
    s.heat_to_gas = -s.heat_to_gas;
    return s;
  }
  SegmentKind operator()(HeatExchange s) const {
    std::swap(s.source, s.sink);
    return s;
  }
  SegmentKind operator()(WorkInvestment s) const {
    s.work = -s.work;
    return s;
  }
};

}  // namespace

Segment reversed(const Segment& segment) {
  Segment out{std::visit(ReverseKind{}, segment.kind), segment.changes, segment.reversible};
  for (auto& change : out.changes) {
    std::swap(change.in, change.out);
    change.work = -change.work;
  }
  return out;
}

}  // namespace axitherm
