#include "axitherm/core/system.hpp"

#include <algorithm>
#include <atomic>
#include <iterator>

namespace axitherm {

std::string_view kind_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::gas:
      return "gas";
    case SystemKind::reservoir:
      return "reservoir";
    case SystemKind::composite:
      return "composite";
  }
  return "unknown";
}

Leaf make_leaf(SystemKind kind, std::string label) {
  static std::atomic<std::uint64_t> next{1};
  if (kind == SystemKind::composite) throw SystemError("a leaf cannot be composite");
  return Leaf{LeafId{next.fetch_add(1, std::memory_order_relaxed)}, kind, std::move(label)};
}

SystemId::SystemId(Leaf leaf) : leaves_{std::move(leaf)} {}

SystemKind SystemId::kind() const { return leaves_.size() == 1 ? leaves_.front().kind : SystemKind::composite; }

bool SystemId::contains(LeafId id) const {
  return std::binary_search(leaves_.begin(), leaves_.end(), Leaf{id, SystemKind::gas, {}},
                            [](const Leaf& a, const Leaf& b) { return a.id < b.id; });
}

std::string SystemId::describe() const {
  if (leaves_.size() == 1) return leaves_.front().label;
  std::string out = "c(";
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    if (i) out += ",";
    out += leaves_[i].label;
  }
  return out + ")";
}

bool operator==(const SystemId& a, const SystemId& b) { return a.leaves_ == b.leaves_; }

SystemId compose(const SystemId& a, const SystemId& b) {
  SystemId out;
  out.leaves_.reserve(a.leaves_.size() + b.leaves_.size());
  std::merge(a.leaves_.begin(), a.leaves_.end(), b.leaves_.begin(), b.leaves_.end(),
             std::back_inserter(out.leaves_), [](const Leaf& x, const Leaf& y) { return x.id < y.id; });
  const auto dup = std::adjacent_find(out.leaves_.begin(), out.leaves_.end());
  if (dup != out.leaves_.end()) throw SystemError("systems must be distinct instances");
  return out;
}

SystemId compose_all(const std::vector<SystemId>& systems) {
  if (systems.empty()) throw SystemError("compose_all needs at least one system");
  SystemId out = systems.front();
  for (std::size_t i = 1; i < systems.size(); ++i) out = compose(out, systems[i]);
  return out;
}

}  // namespace axitherm
