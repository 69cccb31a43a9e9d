#include "starspike/kernels.hpp"

#include <atomic>
#include <cmath>

#include "starspike/error.hpp"

namespace starspike::kernels {

namespace scalar {

Moments masked_moments(std::span<const double> x,
                       std::span<const uint8_t> valid) {
  if (x.size() != valid.size()) invariant_failure("masked_moments span mismatch");
  Moments m;
  for (size_t i = 0; i < x.size(); ++i) {
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
  PairMoments m;
  for (size_t i = 0; i < x.size(); ++i) {
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
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
}

void scale_offset(std::span<const double> x, std::span<const uint8_t> valid,
                  double offset, double scale, std::span<double> out) {
  if (x.size() != valid.size() || x.size() != out.size())
    invariant_failure("scale_offset span mismatch");
  for (size_t i = 0; i < x.size(); ++i)
    out[i] = valid[i] ? (x[i] - offset) * scale : 0.0;
}

void abs_ge_mask(std::span<const double> x, std::span<const uint8_t> valid,
                 double threshold, std::span<uint8_t> out) {
  if (x.size() != valid.size() || x.size() != out.size())
    invariant_failure("abs_ge_mask span mismatch");
  for (size_t i = 0; i < x.size(); ++i)
    out[i] = (valid[i] && std::fabs(x[i]) >= threshold) ? 1 : 0;
}

}  // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(STARSPIKE_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect_backend() {
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<int> g_forced{-1};  // -1 = auto

}  // namespace

std::string_view backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return cpu_has_avx2();
}

Backend active_backend() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Backend>(forced);
  static const Backend detected = detect_backend();
  return detected;
}

void force_backend(std::optional<Backend> b) {
  if (!b) {
    g_forced.store(-1, std::memory_order_relaxed);
    return;
  }
  if (!backend_available(*b))
    throw ConfigError("requested SIMD backend unavailable on this CPU: " +
                      std::string(backend_name(*b)));
  g_forced.store(static_cast<int>(*b), std::memory_order_relaxed);
}

Moments masked_moments(std::span<const double> x,
                       std::span<const uint8_t> valid) {
#if defined(STARSPIKE_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::masked_moments(x, valid);
#endif
  return scalar::masked_moments(x, valid);
}

PairMoments masked_pair_moments(std::span<const double> x,
                                std::span<const double> y,
                                std::span<const uint8_t> valid_x,
                                std::span<const uint8_t> valid_y) {
#if defined(STARSPIKE_HAVE_AVX2)
  if (active_backend() == Backend::avx2)
    return avx2::masked_pair_moments(x, y, valid_x, valid_y);
#endif
  return scalar::masked_pair_moments(x, y, valid_x, valid_y);
}

void subtract(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
#if defined(STARSPIKE_HAVE_AVX2)
  if (active_backend() == Backend::avx2) {
    avx2::subtract(a, b, out);
    return;
  }
#endif
  scalar::subtract(a, b, out);
}

void scale_offset(std::span<const double> x, std::span<const uint8_t> valid,
                  double offset, double scale, std::span<double> out) {
#if defined(STARSPIKE_HAVE_AVX2)
  if (active_backend() == Backend::avx2) {
    avx2::scale_offset(x, valid, offset, scale, out);
    return;
  }
#endif
  scalar::scale_offset(x, valid, offset, scale, out);
}

void abs_ge_mask(std::span<const double> x, std::span<const uint8_t> valid,
                 double threshold, std::span<uint8_t> out) {
#if defined(STARSPIKE_HAVE_AVX2)
  if (active_backend() == Backend::avx2) {
    avx2::abs_ge_mask(x, valid, threshold, out);
    return;
  }
#endif
  scalar::abs_ge_mask(x, valid, threshold, out);
}

}  // namespace starspike::kernels
