#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "starspike/types.hpp"

namespace starspike::synth {

struct LogNormalSpec {
  double mu_log = 0.0;     // log-mV or log-seconds
  double sigma_log = 0.0;  // 0 = degenerate (always exp(mu_log))
};

// Event-placement parameters for one direction.
struct DirectionParams {
  double burst_rate_per_hr = 0.0;        // background Poisson burst process
  double spikes_per_burst_mean = 1.0;    // geometric on {1, 2, ...}
  double within_burst_isi_mean_s = 180.0;  // exponential, floored
  LogNormalSpec amplitude_mV{std::log(8.0), 1.0};
  double width_min_s = 60.0;  // raised-cosine support, uniform draw
  double width_max_s = 120.0;
};

// Reference-burst recruitment of the other directions.
struct PropagationParams {
  Direction reference = Direction{2};  // East
  std::array<double, kNumDirections> match_prob{};     // [reference] ignored
  std::array<LogNormalSpec, kNumDirections> delay_s{};  // [reference] ignored
};

struct SynthParams {
  double duration_s = 432000.0;  // five days at 1 Hz
  double sample_rate_hz = 1.0;
  double noise_sigma_mV = 1.0;
  double drift_amplitude_mV = 0.0;  // slow sinusoid + random walk baseline
  double drift_period_s = 86400.0;
  std::array<DirectionParams, kNumDirections> directions{};
  PropagationParams propagation{};
  // Shared-noise mixing weight by linear channel separation (index 0 = own
  // shared stream). All zero = independent channels.
  std::array<double, kNumDirections> coupling_mix{};
  double min_within_burst_isi_s = 120.0;
  uint64_t seed = 1;

  void validate() const;  // throws ConfigError
};

struct PlantedSpike {
  Direction direction;
  double onset_s = 0.0;  // half-maximum crossing of the bump
  double peak_s = 0.0;   // bump center
  double amplitude_mV = 0.0;
  double width_s = 0.0;  // full raised-cosine support
  long burst_id = -1;
};

struct PlantedBurst {
  long id = -1;
  Direction direction;
  double onset_s = 0.0;  // first spike onset
  int size = 0;
  bool recruited = false;     // placed by reference-burst recruitment
  long source_ref_burst = -1;  // recruiting reference burst id, -1 if none
};

struct PlantedDelay {
  long ref_burst_id = -1;
  Direction direction;
  double delay_s = 0.0;
};

struct GroundTruth {
  std::vector<PlantedSpike> spikes;
  std::vector<PlantedBurst> bursts;
  std::vector<PlantedDelay> delays;
  SynthParams params;
  bool no_events_warning = false;

  std::vector<const PlantedSpike*> spikes_of(Direction d) const;
};

// Deterministic generation: drift + channel noise + separation-mixed shared
// noise + raised-cosine bumps for every planted spike. Identical params
// (including seed) give bit-identical output.
std::pair<Recording, GroundTruth> generate(const SynthParams& params);

struct DetectionScore {
  int n_truth = 0;
  int n_detected = 0;
  int n_matched = 0;
  std::optional<double> precision;  // absent when nothing was detected
  std::optional<double> recall;     // absent when truth is empty
  std::optional<double> f1;
};

struct ScoreReport {
  std::array<DetectionScore, kNumDirections> per_direction{};
  DetectionScore pooled;
  double tolerance_s = 0.0;
};

// Greedy one-to-one matching by nearest onset within tol_s; ties go to the
// earliest detected spike, each truth spike matched at most once.
ScoreReport score_detection(const std::array<SpikeTrain, kNumDirections>& detected,
                            const GroundTruth& truth, double tol_s);

// Ground-truth round trip (JSON, schema-tagged).
void write_truth(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth read_truth(const std::filesystem::path& path);

// Named parameter presets used by the CLI and the acceptance suite.
//   paper  - heavy-tailed amplitudes, recruitment-driven rate anisotropy
//   snr8   - paper skeleton with all planted peaks >= 8x noise sigma
//   prop   - single-spike bursts, quiet targets, delay recovery regime
//   noise  - noise-only channels, zero coupling
//   nn-coupling    - nearest-neighbour shared noise only, no events
//   decay-coupling - shared-noise weights falling off exponentially with
//                    separation, no events
SynthParams preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace starspike::synth
