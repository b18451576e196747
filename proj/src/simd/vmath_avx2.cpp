// Copyright 2026 The ldp-bayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// AVX2/FMA kernels. exp/log follow the classic fdlibm range reductions;
// erfcx(x) for x >= 0 is a single Chebyshev expansion in the transformed
// variable t = (x - K) / (x + K), which maps [0, inf) into [-1, 1) and is
// branch-free. Lanes outside a kernel's fast-path domain (subnormals,
// overflow, NaN) fall back to libm per lane; these never occur in the hot
// loops.

#include "ldpb/simd/vmath.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "ldpb/special.hpp"

namespace ldpb::simd::detail {

namespace {

constexpr double kExpLo = -708.0;
constexpr double kExpHi = 709.0;

// exp: x = n*ln2 + r, e^x = 2^n * e^r with a degree-13 Taylor kernel on
// |r| <= ln2/2. Truncation error ~4e-18 relative.
inline __m256d exp4(__m256d x) {
  const __m256d inv_ln2 = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, inv_ln2),
                                    _MM_FROUND_TO_NEAREST_INT);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // 2^n via the exponent field; |n| <= 1021 on the fast path.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i pow2 = _mm256_slli_epi64(
      _mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(pow2));
}

void exp_avx2(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  const __m256d lo = _mm256_set1_pd(kExpLo);
  const __m256d hi = _mm256_set1_pd(kExpHi);
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(in + i);
    // Fast path needs lo <= x <= hi; the comparison is false for NaN.
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(x, lo, _CMP_GE_OQ),
                                     _mm256_cmp_pd(x, hi, _CMP_LE_OQ));
    if (_mm256_movemask_pd(ok) == 0xF) {
      _mm256_storeu_pd(out + i, exp4(x));
    } else {
      for (int j = 0; j < 4; ++j) out[i + j] = std::exp(in[i + j]);
    }
  }
  for (; i < n; ++i) out[i] = std::exp(in[i]);
}

// log: fdlibm decomposition x = 2^k * m with m in [sqrt(2)/2, sqrt(2)).
inline __m256d log4(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  const __m256i expo = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52),
                                        _mm256_set1_epi64x(1023));
  // int64 -> double via the even 32-bit lanes (values are tiny).
  const __m256i shuffled = _mm256_permutevar8x32_epi32(
      expo, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
  __m256d k = _mm256_cvtepi32_pd(_mm256_castsi256_si128(shuffled));

  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  const __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  k = _mm256_add_pd(k, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_sub_pd(m, one);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);

  __m256d t1 = _mm256_set1_pd(1.531383769920937332e-01);
  t1 = _mm256_fmadd_pd(t1, w, _mm256_set1_pd(2.222219843214978396e-01));
  t1 = _mm256_fmadd_pd(t1, w, _mm256_set1_pd(3.999999999940941908e-01));
  t1 = _mm256_mul_pd(t1, w);
  __m256d t2 = _mm256_set1_pd(1.479819860511658591e-01);
  t2 = _mm256_fmadd_pd(t2, w, _mm256_set1_pd(1.818357216161805012e-01));
  t2 = _mm256_fmadd_pd(t2, w, _mm256_set1_pd(2.857142874366239149e-01));
  t2 = _mm256_fmadd_pd(t2, w, _mm256_set1_pd(6.666666666666735130e-01));
  t2 = _mm256_mul_pd(t2, z);
  const __m256d R = _mm256_add_pd(t1, t2);

  const __m256d hfsq =
      _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  // k*ln2_hi - ((hfsq - (s*(hfsq+R) + k*ln2_lo)) - f)
  const __m256d inner =
      _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, R), _mm256_mul_pd(k, ln2_lo));
  const __m256d tail = _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f);
  return _mm256_fmsub_pd(k, ln2_hi, tail);
}

void log_avx2(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  const __m256d dbl_min = _mm256_set1_pd(2.2250738585072014e-308);
  const __m256d dbl_max = _mm256_set1_pd(1.7976931348623157e308);
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(in + i);
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(x, dbl_min, _CMP_GE_OQ),
                                     _mm256_cmp_pd(x, dbl_max, _CMP_LE_OQ));
    if (_mm256_movemask_pd(ok) == 0xF) {
      _mm256_storeu_pd(out + i, log4(x));
    } else {
      for (int j = 0; j < 4; ++j) out[i + j] = std::log(in[i + j]);
    }
  }
  for (; i < n; ++i) out[i] = std::log(in[i]);
}

// Chebyshev coefficients of erfcx(K(1+t)/(1-t)) on t in [-1, 1], K = 3.75.
// Max relative error of the truncated sum is 2e-17 over x in [0, inf).
constexpr double kErfcxK = 3.75;
constexpr int kErfcxTerms = 28;
alignas(32) constexpr double kErfcxCheb[kErfcxTerms] = {
    0.61014308192320041793,     -0.43484127271257747183,
    0.17635119364360550113,     -0.060710795609249414860,
    0.017712068995694114486,    -0.0043211193855672938186,
    0.00085421667688709867882,  -0.00012715509060916274263,
    0.000011248167243671189469, 3.1306388542182097263e-7,
    -2.7098806853776202201e-7,  3.0737622701407688441e-8,
    2.5156203848176229373e-9,   -1.0289299213203191276e-9,
    2.9944052119949939370e-11,  2.6051789687266936275e-11,
    -2.6348399241719695608e-12, -6.4340450989063653660e-13,
    1.1245740180166653570e-13,  1.7281533389994249321e-14,
    -4.2641016949861678658e-15, -5.4537197812504656240e-16,
    1.5869760819016434021e-16,  2.0899843592331457053e-17,
    -5.9005261970321108134e-18, -9.4201387012207935638e-19,
    2.1478617893472245703e-19,  4.9048951831583390013e-20,
};

inline __m256d erfcx4(__m256d x) {
  const __m256d K = _mm256_set1_pd(kErfcxK);
  const __m256d t = _mm256_div_pd(_mm256_sub_pd(x, K), _mm256_add_pd(x, K));
  const __m256d two_t = _mm256_add_pd(t, t);
  __m256d b1 = _mm256_setzero_pd();
  __m256d b2 = _mm256_setzero_pd();
  for (int j = kErfcxTerms - 1; j >= 1; --j) {
    const __m256d b0 = _mm256_add_pd(
        _mm256_fmsub_pd(two_t, b1, b2), _mm256_set1_pd(kErfcxCheb[j]));
    b2 = b1;
    b1 = b0;
  }
  return _mm256_add_pd(_mm256_fmsub_pd(t, b1, b2),
                       _mm256_set1_pd(0.5 * kErfcxCheb[0]));
}

void erfcx_avx2(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d huge = _mm256_set1_pd(1e150);
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(in + i);
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(x, zero, _CMP_GE_OQ),
                                     _mm256_cmp_pd(x, huge, _CMP_LE_OQ));
    if (_mm256_movemask_pd(ok) == 0xF) {
      _mm256_storeu_pd(out + i, erfcx4(x));
    } else {
      for (int j = 0; j < 4; ++j) out[i + j] = ldpb::erfcx(in[i + j]);
    }
  }
  for (; i < n; ++i) out[i] = ldpb::erfcx(in[i]);
}

}  // namespace

const Kernels avx2_kernels = {exp_avx2, log_avx2, erfcx_avx2, "avx2"};

}  // namespace ldpb::simd::detail

#else  // !defined(__x86_64__)

namespace ldpb::simd::detail {
const Kernels avx2_kernels = {nullptr, nullptr, nullptr, "avx2-unavailable"};
}  // namespace ldpb::simd::detail

#endif
