#pragma once

#include <variant>
#include <vector>

#include "axitherm/gas/spec.hpp"
#include "axitherm/units.hpp"

namespace axitherm {

/// A reservoir state is its internal energy (states and energies are in
/// bijection).
struct ReservoirState {
  Energy energy;
};

using LeafState = std::variant<GasState, ReservoirState>;

/// State of a composite: one leaf state per flattened leaf, in leaf order.
struct CompositeState {
  std::vector<LeafState> leaves;
};

/// Rounds to 12 significant decimal digits. State comparisons go through this.
double canonical(double x);

/// Equality of canonical encodings.
bool same_state(const LeafState& a, const LeafState& b);
bool same_state(const CompositeState& a, const CompositeState& b);

/// Bitwise equality, for ledger-identity checks.
bool identical_state(const LeafState& a, const LeafState& b);

}  // namespace axitherm
