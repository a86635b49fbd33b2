#include "seqrec/simd_math.hpp"

#include <bit>
#include <cmath>

#if defined(__AVX512F__) && defined(__AVX512DQ__)
#include <immintrin.h>
#define SEQREC_AVX512 1
#endif

namespace seqrec::fastmath {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;
// exp(t) Taylor, degree 10, |t| <= ln2/2.
constexpr double kExpC[] = {1.0 / 3628800.0, 1.0 / 362880.0, 1.0 / 40320.0, 1.0 / 5040.0,
                            1.0 / 720.0,     1.0 / 120.0,    1.0 / 24.0,    1.0 / 6.0,
                            0.5,             1.0,             1.0};
// atanh series for the log2 mantissa, odd powers z..z^19 folded in z^2.
constexpr double kLogC[] = {1.0 / 19.0, 1.0 / 17.0, 1.0 / 15.0, 1.0 / 13.0, 1.0 / 11.0,
                            1.0 / 9.0,  1.0 / 7.0,  1.0 / 5.0,  1.0 / 3.0,  1.0};
constexpr double kTwoOverLn2 = 2.8853900817779268147198493620038;
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kFlushBelow = -1021.0;
constexpr double kClampAbove = 1023.0;

}  // namespace

double exp2_scalar(double x) {
  const bool live = x >= kFlushBelow;
  x = x < kFlushBelow ? kFlushBelow : x;
  x = x > kClampAbove ? kClampAbove : x;
  const double n = std::nearbyint(x);
  const double t = (x - n) * kLn2;
  double p = kExpC[0];
  for (int k = 1; k < 11; k++) p = std::fma(p, t, kExpC[k]);
  const int64_t ni = static_cast<int64_t>(n);
  const double scale = std::bit_cast<double>(static_cast<uint64_t>(ni + 1023) << 52);
  return live ? p * scale : 0.0;
}

double log2_scalar(double x) {
  const uint64_t bits = std::bit_cast<uint64_t>(x);
  int64_t e = static_cast<int64_t>(bits >> 52) - 1023;
  double m = std::bit_cast<double>((bits & 0xfffffffffffffULL) | (0x3ffULL << 52));
  const bool fold = m > kSqrt2;
  m = fold ? m * 0.5 : m;
  e += fold ? 1 : 0;
  const double z = (m - 1.0) / (m + 1.0);
  const double z2 = z * z;
  double p = kLogC[0];
  for (int k = 1; k < 10; k++) p = std::fma(p, z2, kLogC[k]);
  return static_cast<double>(e) + kTwoOverLn2 * z * p;
}

#ifdef SEQREC_AVX512

namespace {

inline __m512d exp2_vec(__m512d x) {
  const __mmask8 live = _mm512_cmp_pd_mask(x, _mm512_set1_pd(kFlushBelow), _CMP_GE_OQ);
  x = _mm512_max_pd(x, _mm512_set1_pd(kFlushBelow));
  x = _mm512_min_pd(x, _mm512_set1_pd(kClampAbove));
  const __m512d n = _mm512_roundscale_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m512d t = _mm512_mul_pd(_mm512_sub_pd(x, n), _mm512_set1_pd(kLn2));
  __m512d p = _mm512_set1_pd(kExpC[0]);
  for (int k = 1; k < 11; k++) p = _mm512_fmadd_pd(p, t, _mm512_set1_pd(kExpC[k]));
  const __m512i ni = _mm512_cvtpd_epi64(n);
  const __m512d scale = _mm512_castsi512_pd(
      _mm512_slli_epi64(_mm512_add_epi64(ni, _mm512_set1_epi64(1023)), 52));
  return _mm512_maskz_mul_pd(live, p, scale);
}

inline __m512d log2_vec(__m512d x) {
  const __m512i bits = _mm512_castpd_si512(x);
  __m512i e = _mm512_sub_epi64(_mm512_srli_epi64(bits, 52), _mm512_set1_epi64(1023));
  __m512d m = _mm512_castsi512_pd(
      _mm512_or_si512(_mm512_and_si512(bits, _mm512_set1_epi64(0xfffffffffffffULL)),
                      _mm512_set1_epi64(static_cast<int64_t>(0x3ffULL << 52))));
  const __mmask8 fold = _mm512_cmp_pd_mask(m, _mm512_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm512_mask_mul_pd(m, fold, m, _mm512_set1_pd(0.5));
  e = _mm512_mask_add_epi64(e, fold, e, _mm512_set1_epi64(1));
  const __m512d one = _mm512_set1_pd(1.0);
  const __m512d z = _mm512_div_pd(_mm512_sub_pd(m, one), _mm512_add_pd(m, one));
  const __m512d z2 = _mm512_mul_pd(z, z);
  __m512d p = _mm512_set1_pd(kLogC[0]);
  for (int k = 1; k < 10; k++) p = _mm512_fmadd_pd(p, z2, _mm512_set1_pd(kLogC[k]));
  const __m512d ed = _mm512_cvtepi64_pd(e);
  return _mm512_fmadd_pd(_mm512_mul_pd(_mm512_set1_pd(kTwoOverLn2), z), p, ed);
}

}  // namespace

#endif  // SEQREC_AVX512

void exp_power_array(const double* in, double* out, size_t n, double alpha, double beta,
                     double log2_gamma) {
  size_t i = 0;
#ifdef SEQREC_AVX512
  const __m512d vbeta = _mm512_set1_pd(beta);
  const __m512d vlg = _mm512_set1_pd(log2_gamma);
  const __m512d valpha = _mm512_set1_pd(alpha);
  // 4x unroll keeps four dependency chains in flight.
  for (; i + 32 <= n; i += 32) {
    const __m512d s0 = _mm512_loadu_pd(in + i);
    const __m512d s1 = _mm512_loadu_pd(in + i + 8);
    const __m512d s2 = _mm512_loadu_pd(in + i + 16);
    const __m512d s3 = _mm512_loadu_pd(in + i + 24);
    const __m512d l0 = log2_vec(s0);
    const __m512d l1 = log2_vec(s1);
    const __m512d l2 = log2_vec(s2);
    const __m512d l3 = log2_vec(s3);
    const __m512d p0 = exp2_vec(_mm512_mul_pd(vbeta, l0));
    const __m512d p1 = exp2_vec(_mm512_mul_pd(vbeta, l1));
    const __m512d p2 = exp2_vec(_mm512_mul_pd(vbeta, l2));
    const __m512d p3 = exp2_vec(_mm512_mul_pd(vbeta, l3));
    const __m512d r0 = exp2_vec(_mm512_mul_pd(vlg, p0));
    const __m512d r1 = exp2_vec(_mm512_mul_pd(vlg, p1));
    const __m512d r2 = exp2_vec(_mm512_mul_pd(vlg, p2));
    const __m512d r3 = exp2_vec(_mm512_mul_pd(vlg, p3));
    _mm512_storeu_pd(out + i, _mm512_mul_pd(valpha, r0));
    _mm512_storeu_pd(out + i + 8, _mm512_mul_pd(valpha, r1));
    _mm512_storeu_pd(out + i + 16, _mm512_mul_pd(valpha, r2));
    _mm512_storeu_pd(out + i + 24, _mm512_mul_pd(valpha, r3));
  }
  for (; i + 8 <= n; i += 8) {
    const __m512d s = _mm512_loadu_pd(in + i);
    const __m512d pw = exp2_vec(_mm512_mul_pd(vbeta, log2_vec(s)));
    _mm512_storeu_pd(out + i, _mm512_mul_pd(valpha, exp2_vec(_mm512_mul_pd(vlg, pw))));
  }
#endif
  for (; i < n; i++) {
    const double pw = exp2_scalar(beta * log2_scalar(in[i]));
    out[i] = alpha * exp2_scalar(log2_gamma * pw);
  }
}

void pow_array(const double* in, double* out, size_t n, double beta) {
  size_t i = 0;
#ifdef SEQREC_AVX512
  const __m512d vbeta = _mm512_set1_pd(beta);
  for (; i + 8 <= n; i += 8) {
    const __m512d s = _mm512_loadu_pd(in + i);
    _mm512_storeu_pd(out + i, exp2_vec(_mm512_mul_pd(vbeta, log2_vec(s))));
  }
#endif
  for (; i < n; i++) out[i] = exp2_scalar(beta * log2_scalar(in[i]));
}

bool simd_enabled() {
#ifdef SEQREC_AVX512
  return true;
#else
  return false;
#endif
}

}  // namespace seqrec::fastmath
