// AVX2 variants of the data-parallel kernels. Compiled with -mavx2 -mfma in
// its own TU; only reached after the runtime CPU check in kernels.cpp.
//
// The element-wise maps use the same IEEE operation sequence as the scalar
// reference (sub then mul, no FMA contraction) so scalar/AVX2 outputs are
// bit-identical; the reductions differ only by summation order.

#include "starspike/kernels.hpp"

#if defined(STARSPIKE_HAVE_AVX2) && defined(__AVX2__)

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "starspike/error.hpp"

namespace starspike::kernels::avx2 {

namespace {

// 4 validity bytes -> 64-bit lane mask (all-ones where byte != 0).
inline __m256i lane_mask4(const uint8_t* valid) {
  uint32_t packed;
  std::memcpy(&packed, valid, 4);
  const __m128i bytes = _mm_cvtsi32_si128(static_cast<int>(packed));
  const __m256i lanes = _mm256_cvtepu8_epi64(bytes);
  const __m256i zero = _mm256_setzero_si256();
  return _mm256_xor_si256(_mm256_cmpeq_epi64(lanes, zero),
                          _mm256_set1_epi64x(-1));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline long long hsum_epi64(__m256i v) {
  alignas(32) long long lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

Moments masked_moments(std::span<const double> x,
                       std::span<const uint8_t> valid) {
  if (x.size() != valid.size()) invariant_failure("masked_moments span mismatch");
  const size_t n = x.size();
  __m256d sum = _mm256_setzero_pd();
  __m256d sum_sq = _mm256_setzero_pd();
  __m256i count = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i mask = lane_mask4(&valid[i]);
    const __m256d xv =
        _mm256_and_pd(_mm256_loadu_pd(&x[i]), _mm256_castsi256_pd(mask));
    sum = _mm256_add_pd(sum, xv);
    sum_sq = _mm256_fmadd_pd(xv, xv, sum_sq);
    count = _mm256_sub_epi64(count, mask);  // mask lanes are 0 or -1
  }
  Moments m;
  m.sum = hsum(sum);
  m.sum_sq = hsum(sum_sq);
  m.n = hsum_epi64(count);
  for (; i < n; ++i) {
    if (!valid[i]) continue;
    ++m.n;
    m.sum += x[i];
    m.sum_sq += x[i] * x[i];
  }
  return m;
}

PairMoments masked_pair_moments(std::span<const double> x,
                                std::span<const double> y,
                                std::span<const uint8_t> valid_x,
                                std::span<const uint8_t> valid_y) {
  if (x.size() != y.size() || x.size() != valid_x.size() ||
      x.size() != valid_y.size())
    invariant_failure("masked_pair_moments span mismatch");
  const size_t n = x.size();
  __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd();
  __m256d sxx = _mm256_setzero_pd(), syy = _mm256_setzero_pd();
  __m256d sxy = _mm256_setzero_pd();
  __m256i count = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i mask =
        _mm256_and_si256(lane_mask4(&valid_x[i]), lane_mask4(&valid_y[i]));
    const __m256d maskd = _mm256_castsi256_pd(mask);
    const __m256d xv = _mm256_and_pd(_mm256_loadu_pd(&x[i]), maskd);
    const __m256d yv = _mm256_and_pd(_mm256_loadu_pd(&y[i]), maskd);
    sx = _mm256_add_pd(sx, xv);
    sy = _mm256_add_pd(sy, yv);
    sxx = _mm256_fmadd_pd(xv, xv, sxx);
    syy = _mm256_fmadd_pd(yv, yv, syy);
    sxy = _mm256_fmadd_pd(xv, yv, sxy);
    count = _mm256_sub_epi64(count, mask);
  }
  PairMoments m;
  m.sum_x = hsum(sx);
  m.sum_y = hsum(sy);
  m.sum_xx = hsum(sxx);
  m.sum_yy = hsum(syy);
  m.sum_xy = hsum(sxy);
  m.n = hsum_epi64(count);
  for (; i < n; ++i) {
    if (!valid_x[i] || !valid_y[i]) continue;
    ++m.n;
    m.sum_x += x[i];
    m.sum_y += y[i];
    m.sum_xx += x[i] * x[i];
    m.sum_yy += y[i] * y[i];
    m.sum_xy += x[i] * y[i];
  }
  return m;
}

void subtract(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  if (a.size() != b.size() || a.size() != out.size())
    invariant_failure("subtract span mismatch");
  const size_t n = a.size();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(&out[i], _mm256_sub_pd(_mm256_loadu_pd(&a[i]),
                                            _mm256_loadu_pd(&b[i])));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_offset(std::span<const double> x, std::span<const uint8_t> valid,
                  double offset, double scale, std::span<double> out) {
  if (x.size() != valid.size() || x.size() != out.size())
    invariant_failure("scale_offset span mismatch");
  const size_t n = x.size();
  const __m256d off = _mm256_set1_pd(offset);
  const __m256d sc = _mm256_set1_pd(scale);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d maskd = _mm256_castsi256_pd(lane_mask4(&valid[i]));
    // sub then mul, matching the scalar reference bit-for-bit
    const __m256d v =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(&x[i]), off), sc);
    _mm256_storeu_pd(&out[i], _mm256_and_pd(v, maskd));
  }
  for (; i < n; ++i) out[i] = valid[i] ? (x[i] - offset) * scale : 0.0;
}

void abs_ge_mask(std::span<const double> x, std::span<const uint8_t> valid,
                 double threshold, std::span<uint8_t> out) {
  if (x.size() != valid.size() || x.size() != out.size())
    invariant_failure("abs_ge_mask span mismatch");
  const size_t n = x.size();
  const __m256d abs_mask = _mm256_castsi256_pd(
      _mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d thr = _mm256_set1_pd(threshold);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_and_pd(_mm256_loadu_pd(&x[i]), abs_mask);
    const int bits =
        _mm256_movemask_pd(_mm256_cmp_pd(ax, thr, _CMP_GE_OQ));
    out[i + 0] = (valid[i + 0] && (bits & 1)) ? 1 : 0;
    out[i + 1] = (valid[i + 1] && (bits & 2)) ? 1 : 0;
    out[i + 2] = (valid[i + 2] && (bits & 4)) ? 1 : 0;
    out[i + 3] = (valid[i + 3] && (bits & 8)) ? 1 : 0;
  }
  for (; i < n; ++i)
    out[i] = (valid[i] && std::fabs(x[i]) >= threshold) ? 1 : 0;
}

}  // namespace starspike::kernels::avx2

#endif  // STARSPIKE_HAVE_AVX2 && __AVX2__
