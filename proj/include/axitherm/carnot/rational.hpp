#pragma once

#include <cstdint>

namespace axitherm {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Smallest-denominator fraction num/den with |num/den - target| <= rel_tol * target,
/// searched over continued-fraction convergents and semiconvergents with
/// den <= max_den. target must be positive. Returns den == 0 when no such
/// fraction exists under the cap.
Rational simplest_within(double target, double rel_tol, std::int64_t max_den);

}  // namespace axitherm
