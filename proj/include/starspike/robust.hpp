#pragma once

#include <span>
#include <vector>

namespace starspike {

// Quantile of an ascending-sorted range with linear interpolation between
// order statistics at position q*(n-1). q is clamped to [0,1]. n must be >= 1.
double quantile_sorted(std::span<const double> sorted, double q);

// Convenience: copies, sorts, interpolates.
double quantile(std::span<const double> values, double q);

double median(std::span<const double> values);

// Robust noise scale: 1.4826 * median(|x - median(x)|). Zero for constant input.
double mad_sigma(std::span<const double> values);

// Population moments (divide by n throughout).
double mean(std::span<const double> values);
double variance_population(std::span<const double> values);
double skewness_population(std::span<const double> values);

// Gathers the valid entries of a masked series into a fresh vector.
std::vector<double> gather_valid(std::span<const double> values,
                                 std::span<const unsigned char> valid);

}  // namespace starspike
