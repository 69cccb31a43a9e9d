#pragma once

#include <array>
#include <optional>
#include <vector>

#include "starspike/types.hpp"

namespace starspike {

// Sorted burst onset times for one direction.
std::vector<double> burst_onsets(const std::vector<Burst>& bursts);

// Per reference-onset, per-direction first-spike delays. A direction's
// outcome is the delay (seconds) of the first spike with onset in
// [t, t + window_s], inclusive on both ends, or unmatched. The reference
// direction carries no outcome.
struct DelayTable {
  Direction reference;
  double window_s = 0.0;
  struct Event {
    double onset_s = 0.0;
    std::array<std::optional<double>, kNumDirections> delay_s;  // [ref] unused
  };
  std::vector<Event> events;
};

DelayTable match_delays(const std::vector<double>& ref_onsets_s,
                        const std::array<SpikeTrain, kNumDirections>& trains,
                        double window_s, Direction reference);

struct PropagationSummary {
  Direction reference;
  double window_s = 0.0;
  int n_onsets = 0;
  struct DirectionSummary {
    Direction direction;
    int n_matched = 0;
    double match_rate = 0.0;
    // Interpolated order statistics of matched delays; absent with 0 matches.
    std::optional<double> median_s, q1_s, q3_s;
  };
  std::vector<DirectionSummary> directions;  // 7 entries, index order
};

PropagationSummary summarize_propagation(const DelayTable& table);

// Values keyed by direction, ordered by angle for polar plots.
struct PolarEntry {
  double angle_deg = 0.0;
  Direction direction;
  std::optional<double> value;  // absent direction -> nullopt
};

std::vector<PolarEntry> polar_summary(
    const std::array<std::optional<double>, kNumDirections>& values);

}  // namespace starspike
