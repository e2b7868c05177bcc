#pragma once

// Composite Simpson quadrature of power-law integrands x^(-e) on [a, b],
// taken in the variable t = ln x where the integrand exp((1 - e) t) is smooth
// even across wide volume ratios.
//
// Every quasi-static work integral in the gas model reduces to this form:
// isotherms (e = 1), adiabats (e = gamma) and the drifting finite-tank
// contact path (e = 1 + k). The kernel comes in a scalar reference version
// and an AVX2 version selected at runtime; the two are equivalence-tested.

#include <cstddef>
#include <string_view>

namespace axitherm::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True when the running CPU can execute kernels for `isa`.
bool isa_supported(Isa isa);

/// Best supported ISA, unless the AXITHERM_SIMD environment variable forces
/// "scalar" or "avx2". The answer is computed once per process.
Isa active_isa();

namespace scalar {
double simpson_power(double a, double b, double exponent, std::size_t panels);
}

namespace avx2 {
// Requires isa_supported(Isa::avx2). Nodes must satisfy |(1 - exponent) ln x| < 700.
double simpson_power(double a, double b, double exponent, std::size_t panels);
}

/// Integral of x^(-exponent) from a to b (a, b > 0, either order) with
/// `panels` Simpson panels (must be even and >= 2). Throws
/// std::invalid_argument on bad input.
double simpson_power(double a, double b, double exponent, std::size_t panels);

/// Same, on an explicitly chosen ISA.
double simpson_power(Isa isa, double a, double b, double exponent, std::size_t panels);

}  // namespace axitherm::simd
