#include "starspike/propagation.hpp"

#include <algorithm>

#include "starspike/error.hpp"
#include "starspike/robust.hpp"

namespace starspike {

std::vector<double> burst_onsets(const std::vector<Burst>& bursts) {
  std::vector<double> onsets;
  onsets.reserve(bursts.size());
  for (const Burst& b : bursts) onsets.push_back(b.onset_s);
  std::sort(onsets.begin(), onsets.end());
  return onsets;
}

DelayTable match_delays(const std::vector<double>& ref_onsets_s,
                        const std::array<SpikeTrain, kNumDirections>& trains,
                        double window_s, Direction reference) {
  if (!(window_s > 0.0)) throw ConfigError("propagation window must be > 0");
  DelayTable table;
  table.reference = reference;
  table.window_s = window_s;

  std::array<std::vector<double>, kNumDirections> onsets;
  for (int d = 0; d < kNumDirections; ++d) {
    const auto& train = trains[static_cast<size_t>(d)];
    onsets[static_cast<size_t>(d)].reserve(train.spikes.size());
    for (const auto& ev : train.spikes)
      onsets[static_cast<size_t>(d)].push_back(ev.onset_s);
    // detect_spikes emits onset order; staged inputs may not
    std::sort(onsets[static_cast<size_t>(d)].begin(),
              onsets[static_cast<size_t>(d)].end());
  }

  for (double t : ref_onsets_s) {
    DelayTable::Event ev;
    ev.onset_s = t;
    for (int d = 0; d < kNumDirections; ++d) {
      if (d == reference.index) continue;
      const auto& os = onsets[static_cast<size_t>(d)];
      const auto it = std::lower_bound(os.begin(), os.end(), t);
      if (it != os.end() && *it <= t + window_s)
        ev.delay_s[static_cast<size_t>(d)] = *it - t;
    }
    table.events.push_back(std::move(ev));
  }
  return table;
}

PropagationSummary summarize_propagation(const DelayTable& table) {
  if (table.events.empty())
    throw InputError("propagation summary needs at least one reference onset");
  PropagationSummary sum;
  sum.reference = table.reference;
  sum.window_s = table.window_s;
  sum.n_onsets = static_cast<int>(table.events.size());
  for (int d = 0; d < kNumDirections; ++d) {
    if (d == table.reference.index) continue;
    PropagationSummary::DirectionSummary ds;
    ds.direction = Direction{d};
    std::vector<double> delays;
    for (const auto& ev : table.events)
      if (ev.delay_s[static_cast<size_t>(d)])
        delays.push_back(*ev.delay_s[static_cast<size_t>(d)]);
    ds.n_matched = static_cast<int>(delays.size());
    ds.match_rate =
        static_cast<double>(ds.n_matched) / static_cast<double>(sum.n_onsets);
    if (!delays.empty()) {
      std::sort(delays.begin(), delays.end());
      ds.q1_s = quantile_sorted(delays, 0.25);
      ds.median_s = quantile_sorted(delays, 0.5);
      ds.q3_s = quantile_sorted(delays, 0.75);
    }
    sum.directions.push_back(std::move(ds));
  }
  return sum;
}

std::vector<PolarEntry> polar_summary(
    const std::array<std::optional<double>, kNumDirections>& values) {
  std::vector<PolarEntry> out;
  out.reserve(kNumDirections);
  for (const Direction& d : all_directions()) {
    PolarEntry e;
    e.angle_deg = d.angle_deg();
    e.direction = d;
    e.value = values[static_cast<size_t>(d.index)];
    out.push_back(e);
  }
  return out;
}

}  // namespace starspike
