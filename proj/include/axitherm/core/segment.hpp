#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "axitherm/core/state.hpp"
#include "axitherm/core/system.hpp"

namespace axitherm {

/// One leaf's contribution to a process: endpoint states and invested work.
/// Gas leaves carry their constitutive spec so internal energy is computable.
struct LedgerEntry {
  Leaf leaf;
  std::optional<GasSpec> gas;
  LeafState in;
  LeafState out;
  Energy work;
};

Energy internal_energy(const LedgerEntry& entry, const LeafState& state);

// Primitive segments. Each names the leaves it touches; the resulting state
// changes are stored alongside in Segment::changes.

/// Quasi-static volume change of a gas held on a reservoir's isotherm. For
/// an ideal reservoir drift_exponent is 0; a finite tank cools or warms as it
/// supplies heat, giving p V^(1 + k) = const with k = drift_exponent.
struct IsothermalStep {
  LeafId gas;
  LeafId reservoir;
  Volume v_in;
  Volume v_out;
  double drift_exponent = 0.0;
  Energy work_quadrature;
  Energy work_closed_form;
};

/// Quasi-static volume change of the isolated gas along p V^gamma = const.
struct AdiabaticStep {
  LeafId gas;
  Volume v_in;
  Volume v_out;
  Energy work_quadrature;
  Energy work_closed_form;
};

/// Friction or shaking at fixed volume. Irreversible.
struct FrictionStep {
  LeafId gas;
  Energy work;
};

/// Gas jumps to a reservoir's isotherm at fixed volume.
struct ThermalContact {
  LeafId gas;
  LeafId reservoir;
  Energy heat_to_gas;
};

/// Heat moved between two reservoirs (the merge construction for copies).
struct HeatExchange {
  LeafId source;
  LeafId sink;
  Energy heat;
  bool same_kind = true;
};

/// Work invested into a reservoir (raising its energy).
struct WorkInvestment {
  LeafId reservoir;
  Energy work;
};

using SegmentKind =
    std::variant<IsothermalStep, AdiabaticStep, FrictionStep, ThermalContact, HeatExchange, WorkInvestment>;

struct Segment {
  SegmentKind kind;
  std::vector<LedgerEntry> changes;
  bool reversible = true;
};

std::string_view segment_name(const SegmentKind& kind);

/// The state-swapped, work-negated segment. Only meaningful when
/// segment.reversible.
Segment reversed(const Segment& segment);

/// Leaves named by the segment's parameters.
std::vector<LeafId> touched_leaves(const SegmentKind& kind);

}  // namespace axitherm
