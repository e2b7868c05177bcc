#include <cmath>

#include "axitherm/simd/quadrature.hpp"

namespace axitherm::simd::scalar {

double simpson_power(double a, double b, double exponent, std::size_t panels) {
  const double c = 1.0 - exponent;
  const double t0 = std::log(a);
  const double h = (std::log(b) - t0) / static_cast<double>(panels);
  auto f = [c](double t) { return c == 0.0 ? 1.0 : std::exp(c * t); };
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < panels; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    if (i & 1U) {
      odd += f(t);
    } else {
      even += f(t);
    }
  }
  const double ends = f(t0) + f(t0 + static_cast<double>(panels) * h);
  return h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
}

}  // namespace axitherm::simd::scalar
