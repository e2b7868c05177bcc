#pragma once

// Test-only access to reservoir internals. Production code must not include
// this header: derived temperatures are supposed to be discovered from heat
// flows, not read off the model.

#include <string>

#include "axitherm/reservoir/reservoir.hpp"

namespace axitherm::testing {

struct HiddenAccess {
  static double scale(const KindParam& kind) { return kind.scale_; }
  static double effective_scale(const Reservoir& r) { return r.scale_at(r.energy_); }
  static Reservoir make_leaky(Reservoir r) {
    r.leaky_ = true;
    return r;
  }
};

inline double hidden_scale(const KindParam& kind) { return HiddenAccess::scale(kind); }
inline double hidden_scale(const Reservoir& r) { return HiddenAccess::scale(r.kind()); }
inline double hidden_effective_scale(const Reservoir& r) { return HiddenAccess::effective_scale(r); }

/// A reservoir that (wrongly) lets work be extracted from it.
inline Reservoir leaky_reservoir(std::string label, KindParam kind) {
  return HiddenAccess::make_leaky(Reservoir::ideal(std::move(label), kind));
}

}  // namespace axitherm::testing
