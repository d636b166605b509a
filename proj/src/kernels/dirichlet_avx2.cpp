// Compiled with -mavx2 -mfma; only reached through runtime dispatch.

#include <immintrin.h>

#include <cmath>

#include "lfd/kernels.hpp"
#include "lfd/summation.hpp"

namespace lfd::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

// Round-to-nearest double -> int64 bit pattern, valid for |x| < 2^51.
inline __m256i to_int64(__m256d rounded) {
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 1.5 * 2^52
  return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(rounded, magic)), _mm256_castpd_si256(magic));
}

inline __m256d round_pd(__m256d x) { return _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC); }

// exp(x) for |x| < 700: x = k ln2 + r, |r| <= ln2/2, Taylor through r^13.
inline __m256d exp_pd(__m256d x) {
  const __m256d k = round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634074)));
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(6.93147180369123816490e-01), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(1.90821492927058770002e-10), r);
  static constexpr double inv_fact[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
      1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,
      1.0 / 6.0,          0.5,               1.0,              1.0};
  __m256d p = _mm256_set1_pd(inv_fact[0]);
  for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_fact[i]));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(to_int64(k), _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

// sin and cos for |x| < 2^20 * pi/2. Two-constant Cody-Waite reduction
// to [-pi/4, pi/4], then Taylor polynomials.
inline void sincos_pd(__m256d x, __m256d& sin_out, __m256d& cos_out) {
  const __m256d q = round_pd(_mm256_mul_pd(x, _mm256_set1_pd(6.36619772367581382433e-01)));
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(1.57079632673412561417e+00), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(6.07710050650619224932e-11), r);
  const __m256d r2 = _mm256_mul_pd(r, r);

  // sin r = r (1 - r^2/3! + ... + r^14/15!)
  static constexpr double sin_c[] = {-1.0 / 1307674368000.0, 1.0 / 6227020800.0, -1.0 / 39916800.0,
                                     1.0 / 362880.0,         -1.0 / 5040.0,      1.0 / 120.0,
                                     -1.0 / 6.0,             1.0};
  __m256d ps = _mm256_set1_pd(sin_c[0]);
  for (int i = 1; i < 8; ++i) ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(sin_c[i]));
  const __m256d s = _mm256_mul_pd(ps, r);

  // cos r = 1 - r^2/2! + ... + r^16/16!
  static constexpr double cos_c[] = {1.0 / 20922789888000.0, -1.0 / 87178291200.0, 1.0 / 479001600.0,
                                     -1.0 / 3628800.0,       1.0 / 40320.0,        -1.0 / 720.0,
                                     1.0 / 24.0,             -0.5,                 1.0};
  __m256d pc = _mm256_set1_pd(cos_c[0]);
  for (int i = 1; i < 9; ++i) pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(cos_c[i]));

  const __m256i qi = to_int64(q);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
  const __m256d sin_sign = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(qi, two), 62));
  const __m256d cos_sign =
      _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(qi, one), two), 62));
  sin_out = _mm256_xor_pd(_mm256_blendv_pd(s, pc, swap), sin_sign);
  cos_out = _mm256_xor_pd(_mm256_blendv_pd(pc, s, swap), cos_sign);
}

inline void neumaier(__m256d& sum, __m256d& comp, __m256d x) {
  const __m256d t = _mm256_add_pd(sum, x);
  const __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(x), _CMP_GE_OQ);
  const __m256d a = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
  const __m256d b = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
  comp = _mm256_add_pd(comp, _mm256_blendv_pd(b, a, big_sum));
  sum = t;
}

}  // namespace

std::complex<double> dirichlet_sum_avx2_impl(std::span<const double> c, std::span<const double> log_n,
                                             double sigma, double t) {
  const std::size_t n = std::min(c.size(), log_n.size());
  const __m256d vsigma = _mm256_set1_pd(-sigma);
  const __m256d vt = _mm256_set1_pd(t);
  __m256d re = _mm256_setzero_pd(), re_c = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd(), im_c = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ln = _mm256_loadu_pd(log_n.data() + i);
    const __m256d mag = _mm256_mul_pd(_mm256_loadu_pd(c.data() + i), exp_pd(_mm256_mul_pd(vsigma, ln)));
    __m256d sn, cs;
    sincos_pd(_mm256_mul_pd(vt, ln), sn, cs);
    neumaier(re, re_c, _mm256_mul_pd(mag, cs));
    neumaier(im, im_c, _mm256_xor_pd(_mm256_mul_pd(mag, sn), _mm256_set1_pd(-0.0)));
  }
  alignas(32) double lanes[4][4];
  _mm256_store_pd(lanes[0], re);
  _mm256_store_pd(lanes[1], re_c);
  _mm256_store_pd(lanes[2], im);
  _mm256_store_pd(lanes[3], im_c);
  CompensatedSum rs, is;
  for (int l = 0; l < 4; ++l) {
    rs.add(lanes[0][l]);
    rs.add(lanes[1][l]);
    is.add(lanes[2][l]);
    is.add(lanes[3][l]);
  }
  for (; i < n; ++i) {
    const double mag = c[i] * std::exp(-sigma * log_n[i]);
    const double arg = t * log_n[i];
    rs.add(mag * std::cos(arg));
    is.add(-mag * std::sin(arg));
  }
  return {rs.value(), is.value()};
}

}  // namespace lfd::kernels::detail
