#include "axitherm/core/state.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace axitherm {

double canonical(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

bool same_state(const LeafState& a, const LeafState& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ga = std::get_if<GasState>(&a)) {
    const auto& gb = std::get<GasState>(b);
    return canonical(ga->p.value()) == canonical(gb.p.value()) &&
           canonical(ga->v.value()) == canonical(gb.v.value());
  }
  return canonical(std::get<ReservoirState>(a).energy.value()) ==
         canonical(std::get<ReservoirState>(b).energy.value());
}

bool same_state(const CompositeState& a, const CompositeState& b) {
  if (a.leaves.size() != b.leaves.size()) return false;
  for (std::size_t i = 0; i < a.leaves.size(); ++i) {
    if (!same_state(a.leaves[i], b.leaves[i])) return false;
  }
  return true;
}

bool identical_state(const LeafState& a, const LeafState& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ga = std::get_if<GasState>(&a)) {
    const auto& gb = std::get<GasState>(b);
    return bit_equal(ga->p.value(), gb.p.value()) && bit_equal(ga->v.value(), gb.v.value());
  }
  return bit_equal(std::get<ReservoirState>(a).energy.value(), std::get<ReservoirState>(b).energy.value());
}

}  // namespace axitherm
