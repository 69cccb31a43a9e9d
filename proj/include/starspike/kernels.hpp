#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

// Data-parallel inner loops of the pipeline. Every kernel has a scalar
// reference implementation and (on x86-64 builds) an AVX2 variant; the
// variant is selected once at runtime from CPU capabilities. The two
// implementations are equivalence-tested against each other: the element-wise
// maps are bit-identical, the reductions agree to tight relative tolerance
// (vector accumulators reorder the sums).

namespace starspike::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

// Backend actually used by the kernels below.
Backend active_backend();

// True if this build + CPU can run the given backend.
bool backend_available(Backend b);

// Test hook: pin the backend (nullopt = back to auto-detection).
// Throws ConfigError if the requested backend is unavailable.
void force_backend(std::optional<Backend> b);

struct Moments {
  long long n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Count/sum/sum-of-squares over the valid entries of a masked series.
Moments masked_moments(std::span<const double> x,
                       std::span<const uint8_t> valid);

struct PairMoments {
  long long n = 0;
  double sum_x = 0.0;
  double sum_y = 0.0;
  double sum_xx = 0.0;
  double sum_yy = 0.0;
  double sum_xy = 0.0;
};

// Joint moments over samples valid in both series; feeds Pearson r.
PairMoments masked_pair_moments(std::span<const double> x,
                                std::span<const double> y,
                                std::span<const uint8_t> valid_x,
                                std::span<const uint8_t> valid_y);

// out[i] = a[i] - b[i]. Spans must have equal length; out may alias a.
void subtract(std::span<const double> a, std::span<const double> b,
              std::span<double> out);

// out[i] = valid[i] ? (x[i] - offset) * scale : 0.0
void scale_offset(std::span<const double> x, std::span<const uint8_t> valid,
                  double offset, double scale, std::span<double> out);

// out[i] = valid[i] && |x[i]| >= threshold (threshold comparison is inclusive).
void abs_ge_mask(std::span<const double> x, std::span<const uint8_t> valid,
                 double threshold, std::span<uint8_t> out);

// Scalar reference implementations, exposed for equivalence tests.
namespace scalar {
Moments masked_moments(std::span<const double> x,
                       std::span<const uint8_t> valid);
PairMoments masked_pair_moments(std::span<const double> x,
                                std::span<const double> y,
                                std::span<const uint8_t> valid_x,
                                std::span<const uint8_t> valid_y);
void subtract(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
void scale_offset(std::span<const double> x, std::span<const uint8_t> valid,
                  double offset, double scale, std::span<double> out);
void abs_ge_mask(std::span<const double> x, std::span<const uint8_t> valid,
                 double threshold, std::span<uint8_t> out);
}  // namespace scalar

#if defined(STARSPIKE_HAVE_AVX2)
namespace avx2 {
Moments masked_moments(std::span<const double> x,
                       std::span<const uint8_t> valid);
PairMoments masked_pair_moments(std::span<const double> x,
                                std::span<const double> y,
                                std::span<const uint8_t> valid_x,
                                std::span<const uint8_t> valid_y);
void subtract(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
void scale_offset(std::span<const double> x, std::span<const uint8_t> valid,
                  double offset, double scale, std::span<double> out);
void abs_ge_mask(std::span<const double> x, std::span<const uint8_t> valid,
                 double threshold, std::span<uint8_t> out);
}  // namespace avx2
#endif

}  // namespace starspike::kernels
