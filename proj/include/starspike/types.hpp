#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "starspike/direction.hpp"

namespace starspike {

// One differential channel: millivolt samples plus a per-sample validity
// mask (0 = gap / missing / unusable).
struct ChannelSeries {
  Direction direction;
  std::vector<double> samples_mV;
  std::vector<uint8_t> valid;

  size_t size() const { return samples_mV.size(); }
  size_t valid_count() const;
};

// Time-aligned 8-channel recording. Channels are stored in Direction.index
// order (N first, NW last); sample i sits at t0_s + i / sample_rate_hz.
struct Recording {
  std::string session_id;
  double sample_rate_hz = 1.0;
  double t0_s = 0.0;
  std::array<ChannelSeries, kNumDirections> channels;

  size_t n_samples() const { return channels[0].size(); }
  double time_at(size_t i) const {
    return t0_s + static_cast<double>(i) / sample_rate_hz;
  }
  double duration_s() const {
    return static_cast<double>(n_samples()) / sample_rate_hz;
  }

  // Checks the structural invariants (equal lengths >= 2, channel order,
  // finite valid samples, positive rate); throws InputError on violation.
  void validate() const;
};

// One detected excursion of the detrended signal beyond threshold.
struct SpikeEvent {
  Direction direction;
  double onset_s = 0.0;
  double peak_s = 0.0;
  double offset_s = 0.0;
  double amplitude_mV = 0.0;  // peak |residual|, magnitude convention
  double duration_s = 0.0;    // offset_s - onset_s
};

// Spikes of one channel in onset order, plus how much valid signal was
// analysed (the denominator for rates).
struct SpikeTrain {
  Direction direction;
  std::vector<SpikeEvent> spikes;
  double observed_duration_s = 0.0;
  bool flat = false;  // zero-dispersion channel, detection skipped
};

// A train of spikes separated by gaps no larger than the burst gap.
struct Burst {
  Direction direction;
  std::vector<SpikeEvent> spikes;
  double onset_s = 0.0;     // first spike onset
  double duration_s = 0.0;  // last offset - first onset
  int size = 0;
};

// Every free parameter of the analysis pipeline, with the defaults the
// report echoes. All durations are seconds.
struct AnalysisConfig {
  double detrend_window_s = 3600.0;
  double dispersion_k = 4.0;
  double min_spike_duration_s = 30.0;
  double merge_gap_s = 10.0;
  double burst_gap_s = 600.0;
  double propagation_window_s = 3600.0;
  Direction reference_direction = Direction{2};  // East
  SeparationMetric separation_metric = SeparationMetric::linear;
  int max_gap_interp_samples = 5;

  void validate() const;  // throws ConfigError
};

}  // namespace starspike
