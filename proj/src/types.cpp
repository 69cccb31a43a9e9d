#include "starspike/types.hpp"

#include <cmath>

#include "starspike/error.hpp"

namespace starspike {

size_t ChannelSeries::valid_count() const {
  size_t n = 0;
  for (uint8_t v : valid) n += v ? 1 : 0;
  return n;
}

void Recording::validate() const {
  if (!(sample_rate_hz > 0.0))
    throw InputError("recording \"" + session_id +
                     "\": sample rate must be positive");
  const size_t n = channels[0].size();
  if (n < 2)
    throw InputError("recording \"" + session_id +
                     "\": needs at least 2 samples per channel");
  for (int i = 0; i < kNumDirections; ++i) {
    const auto& ch = channels[static_cast<size_t>(i)];
    if (ch.direction.index != i)
      throw InputError("recording \"" + session_id +
                       "\": channels out of direction order");
    if (ch.samples_mV.size() != n || ch.valid.size() != n)
      throw InputError("recording \"" + session_id +
                       "\": channel lengths differ");
    size_t n_valid = 0;
    for (size_t s = 0; s < n; ++s) {
      if (!ch.valid[s]) continue;
      ++n_valid;
      if (!std::isfinite(ch.samples_mV[s]))
        throw InputError("recording \"" + session_id + "\": channel " +
                         std::string(ch.direction.label()) +
                         " has a non-finite valid sample at index " +
                         std::to_string(s));
    }
    if (n_valid < 2)
      throw InputError("recording \"" + session_id + "\": channel " +
                       std::string(ch.direction.label()) +
                       " has fewer than 2 valid samples");
  }
}

void AnalysisConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw ConfigError(std::string(name) + " must be > 0, got " +
                        std::to_string(v));
  };
  positive(detrend_window_s, "detrend_window_s");
  positive(dispersion_k, "dispersion_k");
  positive(min_spike_duration_s, "min_spike_duration_s");
  positive(merge_gap_s, "merge_gap_s");
  positive(burst_gap_s, "burst_gap_s");
  positive(propagation_window_s, "propagation_window_s");
  if (reference_direction.index < 0 ||
      reference_direction.index >= kNumDirections)
    throw ConfigError("reference_direction index out of range");
  if (max_gap_interp_samples < 0)
    throw ConfigError("max_gap_interp_samples must be >= 0");
}

}  // namespace starspike
