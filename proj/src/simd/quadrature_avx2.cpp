#include <cmath>
#include <stdexcept>

#include "axitherm/simd/quadrature.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#define AXITHERM_AVX2 __attribute__((target("avx2,fma")))

namespace axitherm::simd::avx2 {

namespace {

// exp for 4 doubles after the Cephes rational approximation, |x| < 700.

AXITHERM_AVX2 inline __m256d vexp(__m256d x) {
  const __m256d px = _mm256_floor_pd(
      _mm256_fmadd_pd(x, _mm256_set1_pd(1.4426950408889634073599), _mm256_set1_pd(0.5)));
  x = _mm256_fnmadd_pd(px, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(px, _mm256_set1_pd(1.42860682030941723212E-6), x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = _mm256_fmadd_pd(_mm256_set1_pd(1.26177193074810590878E-4), xx,
                              _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, x);
  __m256d q = _mm256_fmadd_pd(_mm256_set1_pd(3.00198505138664455042E-6), xx,
                              _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000009E0));

  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

  // 2^px via the exponent field; px + 1023 lands in the low mantissa bits.
  const __m256i n = _mm256_castpd_si256(_mm256_add_pd(px, _mm256_set1_pd(0x1p52 + 1023.0)));
  const __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(n, 52));
  return _mm256_mul_pd(r, scale);
}

AXITHERM_AVX2 inline __m256d integrand(__m256d t, double c) {
  if (c == 0.0) return _mm256_set1_pd(1.0);
  return vexp(_mm256_mul_pd(_mm256_set1_pd(c), t));
}

// Simpson in t = ln x; blocks start at odd node indices, so lane weights
// alternate 4, 2, 4, 2.
AXITHERM_AVX2 double kernel(double a, double b, double exponent, std::size_t panels) {
  const double c = 1.0 - exponent;
  const double t0 = std::log(a);
  const double h = (std::log(b) - t0) / static_cast<double>(panels);
  const __m256d vt0 = _mm256_set1_pd(t0);
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d weight = _mm256_set_pd(2.0, 4.0, 2.0, 4.0);

  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 1;
  for (; i + 4 <= panels; i += 4) {
    const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane);
    acc = _mm256_fmadd_pd(weight, integrand(_mm256_fmadd_pd(idx, vh, vt0), c), acc);
  }

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double interior = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);

  // Endpoints plus the (panels - 1) % 4 leftover interior nodes: at most 5 values.
  const double t_end = t0 + static_cast<double>(panels) * h;
  alignas(32) double tail_t[8] = {t0, t_end, t0, t0, t0, t0, t0, t0};
  double tail_w[8] = {1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  int slot = 2;
  for (; i < panels; ++i) {
    tail_t[slot] = t0 + static_cast<double>(i) * h;
    tail_w[slot] = (i & 1U) ? 4.0 : 2.0;
    ++slot;
  }
  _mm256_store_pd(tail_t, integrand(_mm256_load_pd(tail_t), c));
  _mm256_store_pd(tail_t + 4, integrand(_mm256_load_pd(tail_t + 4), c));
  for (int s = 0; s < 8; ++s) interior += tail_w[s] * tail_t[s];

  return h / 3.0 * interior;
}

}  // namespace

double simpson_power(double a, double b, double exponent, std::size_t panels) {
  if (!isa_supported(Isa::avx2)) throw std::runtime_error("avx2 kernel requested on a CPU without AVX2/FMA");
  return kernel(a, b, exponent, panels);
}

}  // namespace axitherm::simd::avx2

#else

namespace axitherm::simd::avx2 {

double simpson_power(double, double, double, std::size_t) {
  throw std::runtime_error("avx2 kernel not built for this architecture");
}

}  // namespace axitherm::simd::avx2

#endif
