#include "axitherm/carnot/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace axitherm {

namespace {

bool accepts(std::int64_t num, std::int64_t den, double target, double rel_tol) {
  return std::fabs(static_cast<double>(num) - static_cast<double>(den) * target) <=
         rel_tol * target * static_cast<double>(den);
}

}  // namespace

Rational simplest_within(double target, double rel_tol, std::int64_t max_den) {
  if (!(target > 0.0) || !std::isfinite(target)) throw std::invalid_argument("target ratio must be positive");

  // Convergents h/k of the continued fraction of target. Between consecutive
  // convergents the semiconvergents (h_prev2 + t h_prev) / (k_prev2 + t k_prev)
  // fill in; the smallest admissible denominator is among them.
  std::int64_t h_prev2 = 0, h_prev = 1;
  std::int64_t k_prev2 = 1, k_prev = 0;
  double x = target;
  for (int depth = 0; depth < 64; ++depth) {
    const double a_real = std::floor(x);
    if (a_real > 9.0e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    for (std::int64_t t = (depth == 0 ? a : 1); t <= a; ++t) {
      const std::int64_t h = h_prev2 + t * h_prev;
      const std::int64_t k = k_prev2 + t * k_prev;
      if (k > max_den) return Rational{0, 0};
      if (k > 0 && accepts(h, k, target, rel_tol)) return Rational{h, k};
    }
    const std::int64_t h = h_prev2 + a * h_prev;
    const std::int64_t k = k_prev2 + a * k_prev;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = x - a_real;
    if (frac <= 0.0) break;
    x = 1.0 / frac;
  }
  return Rational{0, 0};
}

}  // namespace axitherm
