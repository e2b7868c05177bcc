#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace axitherm {

enum class SystemKind { gas, reservoir, composite };

std::string_view kind_name(SystemKind kind);

/// Opaque, process-wide unique identity of an elementary system.
struct LeafId {
  std::uint64_t serial = 0;
  friend auto operator<=>(const LeafId&, const LeafId&) = default;
};

/// An elementary (non-composite) system instance. Two leaves are the same
/// system iff their ids agree; the label is for humans and reports.
struct Leaf {
  LeafId id;
  SystemKind kind = SystemKind::gas;
  std::string label;

  friend bool operator==(const Leaf& a, const Leaf& b) { return a.id == b.id; }
};

/// Creates a leaf with a fresh id. Thread-safe.
Leaf make_leaf(SystemKind kind, std::string label);

class SystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A system: either one leaf or a composite of at least two distinct leaves.
/// Composites are stored flattened with leaves sorted by id, so equality is
/// insensitive to argument order and nesting of compose().
class SystemId {
 public:
  explicit SystemId(Leaf leaf);

  SystemKind kind() const;
  const std::vector<Leaf>& leaves() const { return leaves_; }
  bool contains(LeafId id) const;
  std::string describe() const;

  friend bool operator==(const SystemId& a, const SystemId& b);

 private:
  SystemId() = default;
  std::vector<Leaf> leaves_;

  friend SystemId compose(const SystemId& a, const SystemId& b);
};

/// c(a, b). Throws SystemError("systems must be distinct instances") if a and
/// b share a leaf.
SystemId compose(const SystemId& a, const SystemId& b);

/// Left fold of compose over a nonempty list.
SystemId compose_all(const std::vector<SystemId>& systems);

}  // namespace axitherm
