#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "axitherm/simd/quadrature.hpp"

namespace axitherm::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() {
  if (const char* forced = std::getenv("AXITHERM_SIMD")) {
    const std::string want(forced);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

// The vector exp only covers |x| < 700.
bool within_vector_range(double a, double b, double exponent) {
  const double span = std::fabs(1.0 - exponent) * std::max(std::fabs(std::log(a)), std::fabs(std::log(b)));
  return span < 700.0;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

double simpson_power(Isa isa, double a, double b, double exponent, std::size_t panels) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("simpson_power: integration bounds must be positive and finite");
  }
  if (panels < 2 || panels % 2 != 0) {
    throw std::invalid_argument("simpson_power: panel count must be even and at least 2");
  }
  if (a == b) return 0.0;
  if (isa == Isa::avx2 && isa_supported(Isa::avx2) && within_vector_range(a, b, exponent)) {
    return avx2::simpson_power(a, b, exponent, panels);
  }
  return scalar::simpson_power(a, b, exponent, panels);
}

double simpson_power(double a, double b, double exponent, std::size_t panels) {
  return simpson_power(active_isa(), a, b, exponent, panels);
}

}  // namespace axitherm::simd
