#include "axitherm/core/process.hpp"

#include <algorithm>
#include <set>

namespace axitherm {

Process::Process(Segment segment) {
  const auto named = touched_leaves(segment.kind);
  std::set<LeafId> expected(named.begin(), named.end());
  std::set<LeafId> recorded;
  for (const auto& change : segment.changes) {
    if (!recorded.insert(change.leaf.id).second) throw ProcessError("segment records a leaf twice");
    ledger_.emplace(change.leaf.id, change);
  }
  if (expected != recorded) throw ProcessError("segment changes do not match the leaves it names");
  segments_.push_back(std::move(segment));
}

Process Process::identity(std::vector<LedgerEntry> states) {
  Process out;
  for (auto& entry : states) {
    entry.out = entry.in;
    entry.work = Energy(0.0);
    const LeafId id = entry.leaf.id;
    if (!out.ledger_.emplace(id, std::move(entry)).second) throw ProcessError("identity lists a leaf twice");
  }
  return out;
}

const LedgerEntry& Process::entry(LeafId id) const {
  const auto it = ledger_.find(id);
  if (it == ledger_.end()) throw ProcessError("leaf does not participate in the process");
  return it->second;
}

std::vector<Leaf> Process::participants() const {
  std::vector<Leaf> out;
  out.reserve(ledger_.size());
  for (const auto& [id, entry] : ledger_) out.push_back(entry.leaf);
  return out;
}

Process concat(const Process& p, const Process& q) {
  Process out = p;
  for (const auto& [id, later] : q.ledger_) {
    auto it = out.ledger_.find(id);
    if (it == out.ledger_.end()) {
      out.ledger_.emplace(id, later);
      continue;
    }
    if (!same_state(it->second.out, later.in)) {
      throw ProcessError("non-composable processes: state mismatch on " + later.leaf.label);
    }
    it->second.out = later.out;
    it->second.work += later.work;
  }
  out.segments_.insert(out.segments_.end(), q.segments_.begin(), q.segments_.end());
  return out;
}

Process identity_after(const Process& p) {
  std::vector<LedgerEntry> states;
  for (const auto& [id, entry] : p.ledger()) {
    LedgerEntry e = entry;
    e.in = entry.out;
    states.push_back(std::move(e));
  }
  return Process::identity(std::move(states));
}

Energy work_of(const Process& p, const SystemId& s) {
  Energy total(0.0);
  for (const auto& leaf : s.leaves()) {
    if (p.participates(leaf.id)) total += p.entry(leaf.id).work;
  }
  return total;
}

Energy energy_change(const Process& p, const SystemId& s) {
  Energy total(0.0);
  for (const auto& leaf : s.leaves()) {
    if (!p.participates(leaf.id)) continue;
    const auto& e = p.entry(leaf.id);
    total += internal_energy(e, e.out) - internal_energy(e, e.in);
  }
  return total;
}

Energy heat_of(const Process& p, const SystemId& s) {
  Energy total(0.0);
  for (const auto& leaf : s.leaves()) {
    if (!p.participates(leaf.id)) continue;
    const auto& e = p.entry(leaf.id);
    total += (internal_energy(e, e.out) - internal_energy(e, e.in)) - e.work;
  }
  return total;
}

bool is_cyclic_on(const Process& p, const SystemId& s) {
  return std::all_of(s.leaves().begin(), s.leaves().end(), [&](const Leaf& leaf) {
    if (!p.participates(leaf.id)) return true;
    const auto& e = p.entry(leaf.id);
    return same_state(e.in, e.out);
  });
}

std::variant<Process, NotReversible> reverse(const Process& p) {
  const auto& segs = p.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!segs[i].reversible) {
      return NotReversible{i, std::string(segment_name(segs[i].kind)) + " segment is irreversible"};
    }
  }
  // Segment-free participants (identity parts) are carried over unchanged.
  std::vector<LedgerEntry> idle;
  for (const auto& [id, entry] : p.ledger()) {
    LedgerEntry e = entry;
    std::swap(e.in, e.out);
    idle.push_back(std::move(e));
  }
  Process out = Process::identity(std::move(idle));
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) out = concat(out, Process(reversed(*it)));
  // Works come from the segments; identity parts contribute none.
  return out;
}

namespace {

LeafId remap(LeafId id, const std::map<LeafId, Leaf>& mapping) {
  const auto it = mapping.find(id);
  return it == mapping.end() ? id : it->second.id;
}

struct RemapKind {
  const std::map<LeafId, Leaf>& m;
  SegmentKind operator()(IsothermalStep s) const {
    s.gas = remap(s.gas, m);
    s.reservoir = remap(s.reservoir, m);
    return s;
  }
  SegmentKind operator()(AdiabaticStep s) const {
    s.gas = remap(s.gas, m);
    return s;
  }
  SegmentKind operator()(FrictionStep s) const {
    s.gas = remap(s.gas, m);
    return s;
  }
  SegmentKind operator()(ThermalContact s) const {
    s.gas = remap(s.gas, m);
    s.reservoir = remap(s.reservoir, m);
    return s;
  }
  SegmentKind operator()(HeatExchange s) const {
    s.source = remap(s.source, m);
    s.sink = remap(s.sink, m);
    return s;
  }
  SegmentKind operator()(WorkInvestment s) const {
    s.reservoir = remap(s.reservoir, m);
    return s;
  }
};

LedgerEntry remap_entry(LedgerEntry e, const std::map<LeafId, Leaf>& mapping) {
  const auto it = mapping.find(e.leaf.id);
  if (it != mapping.end()) e.leaf = it->second;
  return e;
}

}  // namespace

Process relabel(const Process& p, const std::map<LeafId, Leaf>& mapping) {
  std::vector<LedgerEntry> starts;
  for (const auto& [id, entry] : p.ledger()) starts.push_back(remap_entry(entry, mapping));
  Process out = Process::identity(std::move(starts));
  for (const auto& seg : p.segments()) {
    Segment copy{std::visit(RemapKind{mapping}, seg.kind), {}, seg.reversible};
    for (const auto& change : seg.changes) copy.changes.push_back(remap_entry(change, mapping));
    out = concat(out, Process(std::move(copy)));
  }
  return out;
}

}  // namespace axitherm
