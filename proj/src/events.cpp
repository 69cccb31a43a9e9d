#include "starspike/events.hpp"

#include <algorithm>
#include <cmath>

#include "starspike/error.hpp"
#include "starspike/kernels.hpp"
#include "starspike/parallel.hpp"
#include "starspike/robust.hpp"

namespace starspike {

double estimate_dispersion(std::span<const double> residual_mV,
                           std::span<const uint8_t> valid) {
  const std::vector<double> vals = gather_valid(residual_mV, valid);
  if (vals.size() < 100)
    throw InputError("dispersion estimate needs at least 100 valid samples, got " +
                     std::to_string(vals.size()));
  return mad_sigma(vals);
}

namespace {

struct Run {
  size_t first = 0;
  size_t last = 0;  // inclusive
};

std::vector<Run> threshold_runs(const std::vector<uint8_t>& mask) {
  std::vector<Run> runs;
  size_t i = 0;
  const size_t n = mask.size();
  while (i < n) {
    if (!mask[i]) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < n && mask[j + 1]) ++j;
    runs.push_back({i, j});
    i = j + 1;
  }
  return runs;
}

void detect_channel(const DetrendedRecording& det, int c,
                    const AnalysisConfig& cfg, SpikeTrain& train) {
  const auto& residual = det.residual_mV[static_cast<size_t>(c)];
  const auto& valid = det.valid[static_cast<size_t>(c)];
  const Recording& base = det.base;
  train.direction = Direction{c};
  train.spikes.clear();

  size_t n_valid = 0;
  for (uint8_t v : valid) n_valid += v ? 1 : 0;
  train.observed_duration_s = static_cast<double>(n_valid) / base.sample_rate_hz;

  const double sigma = estimate_dispersion(residual, valid);
  if (sigma <= 0.0) {
    train.flat = true;
    return;
  }
  const double theta = cfg.dispersion_k * sigma;

  std::vector<uint8_t> mask(residual.size());
  kernels::abs_ge_mask(residual, valid, theta, mask);

  std::vector<Run> runs = threshold_runs(mask);

  // Merge runs whose separating gap is shorter than merge_gap_s.
  std::vector<Run> merged;
  for (const Run& r : runs) {
    if (!merged.empty()) {
      const double gap =
          base.time_at(r.first) - base.time_at(merged.back().last);
      if (gap < cfg.merge_gap_s) {
        merged.back().last = r.last;
        continue;
      }
    }
    merged.push_back(r);
  }

  for (const Run& r : merged) {
    const double onset = base.time_at(r.first);
    const double offset = base.time_at(r.last);
    const double duration = offset - onset;
    if (duration < cfg.min_spike_duration_s) continue;
    // Peak: greatest |residual| among valid samples of the run; earliest wins.
    size_t peak_idx = r.first;
    double peak_abs = -1.0;
    for (size_t i = r.first; i <= r.last; ++i) {
      if (!valid[i]) continue;
      const double a = std::fabs(residual[i]);
      if (a > peak_abs) {
        peak_abs = a;
        peak_idx = i;
      }
    }
    SpikeEvent ev;
    ev.direction = Direction{c};
    ev.onset_s = onset;
    ev.peak_s = base.time_at(peak_idx);
    ev.offset_s = offset;
    ev.amplitude_mV = peak_abs;
    ev.duration_s = duration;
    train.spikes.push_back(ev);
  }
}

}  // namespace

std::array<SpikeTrain, kNumDirections> detect_spikes(
    const DetrendedRecording& det, const AnalysisConfig& cfg) {
  cfg.validate();
  std::array<SpikeTrain, kNumDirections> trains;
  std::array<std::exception_ptr, kNumDirections> errors{};
  parallel_channels([&](int c) {
    try {
      detect_channel(det, c, cfg, trains[static_cast<size_t>(c)]);
    } catch (...) {
      errors[static_cast<size_t>(c)] = std::current_exception();
    }
  });
  for (int c = 0; c < kNumDirections; ++c)
    if (errors[static_cast<size_t>(c)])
      std::rethrow_exception(errors[static_cast<size_t>(c)]);
  return trains;
}

DirectionStats direction_stats(const SpikeTrain& train) {
  DirectionStats s;
  s.direction = train.direction;
  s.spike_count = static_cast<int>(train.spikes.size());
  if (train.observed_duration_s > 0.0)
    s.rate_per_min =
        static_cast<double>(s.spike_count) / (train.observed_duration_s / 60.0);
  if (!train.spikes.empty()) {
    std::vector<double> amps;
    amps.reserve(train.spikes.size());
    for (const auto& ev : train.spikes) amps.push_back(ev.amplitude_mV);
    std::sort(amps.begin(), amps.end());
    s.amplitude_q1_mV = quantile_sorted(amps, 0.25);
    s.amplitude_median_mV = quantile_sorted(amps, 0.5);
    s.amplitude_q3_mV = quantile_sorted(amps, 0.75);
    s.amplitude_max_mV = amps.back();
    for (size_t i = 0; i + 1 < train.spikes.size(); ++i)
      s.isi_s.push_back(train.spikes[i + 1].onset_s - train.spikes[i].onset_s);
  }
  return s;
}

std::vector<Burst> group_bursts(const SpikeTrain& train, double burst_gap_s) {
  if (!(burst_gap_s > 0.0)) throw ConfigError("burst_gap_s must be > 0");
  std::vector<Burst> bursts;
  for (const SpikeEvent& ev : train.spikes) {
    const bool new_burst =
        bursts.empty() ||
        ev.onset_s - bursts.back().spikes.back().offset_s > burst_gap_s;
    if (new_burst) {
      Burst b;
      b.direction = train.direction;
      b.onset_s = ev.onset_s;
      bursts.push_back(std::move(b));
    }
    bursts.back().spikes.push_back(ev);
  }
  for (Burst& b : bursts) {
    b.size = static_cast<int>(b.spikes.size());
    b.duration_s = b.spikes.back().offset_s - b.onset_s;
  }
  return bursts;
}

IsiHistogram isi_histogram(std::span<const double> isis_s, double bin_width_s,
                           double max_s) {
  if (!(bin_width_s > 0.0)) throw ConfigError("ISI bin width must be > 0");
  if (!(max_s > 0.0)) throw ConfigError("ISI histogram max must be > 0");
  IsiHistogram h;
  h.bin_width_s = bin_width_s;
  h.max_s = max_s;
  const size_t n_bins =
      static_cast<size_t>(std::ceil(max_s / bin_width_s - 1e-12));
  h.counts.assign(n_bins, 0);
  for (double isi : isis_s) {
    if (isi >= max_s) {
      ++h.overflow;
      continue;
    }
    size_t bin = static_cast<size_t>(isi / bin_width_s);
    if (bin >= n_bins) bin = n_bins - 1;  // fp edge of the last bin
    ++h.counts[bin];
  }
  return h;
}

}  // namespace starspike
