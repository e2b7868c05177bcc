#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "axitherm/core/segment.hpp"

namespace axitherm {

class ProcessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A thermodynamic process: a list of primitive segments and the per-leaf
/// ledger they induce. Values are immutable once built; extend with concat().
class Process {
 public:
  /// The empty process (no participants, cyclic on everything).
  Process() = default;
  explicit Process(Segment segment);

  /// A segment-free process that leaves the given states unchanged.
  static Process identity(std::vector<LedgerEntry> states);

  const std::vector<Segment>& segments() const { return segments_; }
  const std::map<LeafId, LedgerEntry>& ledger() const { return ledger_; }

  bool participates(LeafId id) const { return ledger_.count(id) != 0; }
  /// Throws ProcessError if the leaf does not participate.
  const LedgerEntry& entry(LeafId id) const;
  std::vector<Leaf> participants() const;

  friend Process concat(const Process& p, const Process& q);

 private:
  std::vector<Segment> segments_;
  std::map<LeafId, LedgerEntry> ledger_;
};

/// p followed by q. Leaves shared by both must have matching out/in states
/// (canonical encoding), else ProcessError("non-composable processes").
/// On disjoint participants this is parallel composition.
Process concat(const Process& p, const Process& q);

/// Identity process on p's output states.
Process identity_after(const Process& p);

/// Work invested into s; leaves of s that do not participate contribute 0.
Energy work_of(const Process& p, const SystemId& s);

/// Q_s(p) = dU_s - W_s(p), summed over participating leaves of s.
Energy heat_of(const Process& p, const SystemId& s);

Energy energy_change(const Process& p, const SystemId& s);

/// Every participating leaf of s returns to its input state.
bool is_cyclic_on(const Process& p, const SystemId& s);

struct NotReversible {
  std::size_t segment_index = 0;
  std::string reason;
};

/// Reverse segment order and reverse each segment; works negate, in and out
/// states swap. NotReversible names the first irreversible segment.
std::variant<Process, NotReversible> reverse(const Process& p);

/// Copy of p with leaves renamed through `mapping` (leaves not in the map are
/// kept). Used to materialize independent copies of a machine.
Process relabel(const Process& p, const std::map<LeafId, Leaf>& mapping);

}  // namespace axitherm
