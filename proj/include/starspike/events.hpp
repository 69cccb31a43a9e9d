#pragma once

#include <array>
#include <optional>
#include <vector>

#include "starspike/ingest.hpp"
#include "starspike/types.hpp"

namespace starspike {

// Robust noise scale of a detrended channel: 1.4826 * MAD over valid
// residuals. Throws InputError below 100 valid samples.
double estimate_dispersion(std::span<const double> residual_mV,
                           std::span<const uint8_t> valid);

// Adaptive threshold detection on all 8 channels. Per channel the threshold
// is dispersion_k * estimate_dispersion; candidates are maximal runs with
// |residual| >= threshold, runs separated by less than merge_gap_s are
// merged, and survivors shorter than min_spike_duration_s are dropped.
// Flat channels (zero dispersion) come back empty with the flat flag set.
std::array<SpikeTrain, kNumDirections> detect_spikes(
    const DetrendedRecording& det, const AnalysisConfig& cfg);

struct DirectionStats {
  Direction direction;
  int spike_count = 0;
  double rate_per_min = 0.0;
  // Order statistics of spike amplitude; absent for empty trains.
  std::optional<double> amplitude_q1_mV, amplitude_median_mV, amplitude_q3_mV;
  std::optional<double> amplitude_max_mV;
  std::vector<double> isi_s;  // consecutive onset-to-onset intervals
};

DirectionStats direction_stats(const SpikeTrain& train);

// Partition of a train into bursts: a gap (next onset - previous offset)
// exceeding burst_gap_s starts a new burst; singletons allowed.
std::vector<Burst> group_bursts(const SpikeTrain& train, double burst_gap_s);

struct IsiHistogram {
  double bin_width_s = 0.0;
  double max_s = 0.0;
  std::vector<long> counts;  // intervals in [0, max_s), uniform bins
  long overflow = 0;         // intervals >= max_s
};

IsiHistogram isi_histogram(std::span<const double> isis_s, double bin_width_s,
                           double max_s);

}  // namespace starspike
