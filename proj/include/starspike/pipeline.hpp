#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "starspike/config.hpp"
#include "starspike/coupling.hpp"
#include "starspike/events.hpp"
#include "starspike/propagation.hpp"
#include "starspike/synth.hpp"
#include "starspike/types.hpp"

namespace starspike {

// ISI histogram scales emitted by every report (sub-hour and multi-hour
// views of the same pooled intervals).
inline constexpr double kIsiShortMax_s = 3600.0;
inline constexpr double kIsiShortBin_s = 120.0;
inline constexpr double kIsiLongMax_s = 36000.0;
inline constexpr double kIsiLongBin_s = 1200.0;

// Amplitude histogram: 2 mV bins up to 160 mV, larger events counted as
// overflow metadata.
inline constexpr double kAmpHistBin_mV = 2.0;
inline constexpr double kAmpHistMax_mV = 160.0;

// Everything one session contributes to the report. Stages fill this in
// memory and serialize it; the report stage reads it back from disk so the
// staged and monolithic paths share one code path.
struct SessionArtifacts {
  std::string session_id;
  double sample_rate_hz = 1.0;
  size_t n_samples = 0;
  std::array<SpikeTrain, kNumDirections> trains;
  std::array<std::vector<Burst>, kNumDirections> bursts;
  std::array<DirectionStats, kNumDirections> stats;
  IsiHistogram isi_short, isi_long;  // pooled across channels
  CorrelationMatrix correlation;
  SeparationDecay decay;
  DelayTable delays;
  std::optional<PropagationSummary> propagation;  // absent without ref onsets
};

// --- stages -----------------------------------------------------------------
// Each stage consumes the previous stage's serialized outputs, so the CLI
// subcommands compose exactly like the monolithic pipeline.

// ingest -> detrend -> detect -> bursts; writes spikes.tsv + bursts.tsv.
void stage_detect(const std::filesystem::path& recording_path,
                  const std::string& session_id, const EffectiveConfig& cfg,
                  const std::filesystem::path& session_dir);

// event statistics + coupling from spikes.tsv and the recording;
// writes analysis.json.
void stage_analyze(const std::filesystem::path& recording_path,
                   const std::filesystem::path& spikes_path,
                   const EffectiveConfig& cfg,
                   const std::filesystem::path& session_dir);

// reference bursts -> delay table -> summary from spikes.tsv;
// writes propagation.json.
void stage_propagate(const std::filesystem::path& spikes_path,
                     const EffectiveConfig& cfg,
                     const std::filesystem::path& session_dir);

// detection scores against a ground-truth file; writes scores.tsv.
synth::ScoreReport stage_score(const std::filesystem::path& spikes_path,
                               const std::filesystem::path& truth_path,
                               double tol_s,
                               const std::filesystem::path& out_path);

// Pools completed session directories into report.json plus the per-figure
// tables; returns the report payload.
nlohmann::json stage_report(
    const std::vector<std::filesystem::path>& session_dirs,
    const EffectiveConfig& cfg, const std::filesystem::path& out_dir);

// --- serialization helpers (shared by stages and tests) ---------------------

void write_spikes_table(const SessionArtifacts& art,
                        const std::filesystem::path& path);
void write_bursts_table(const SessionArtifacts& art,
                        const std::filesystem::path& path);

struct SpikesFile {
  std::string session_id;
  double sample_rate_hz = 1.0;
  size_t n_samples = 0;
  std::array<SpikeTrain, kNumDirections> trains;
};
SpikesFile read_spikes_table(const std::filesystem::path& path);

// --- monolithic pipeline -----------------------------------------------------

struct PipelineInput {
  std::filesystem::path recording;
  std::string session_id;                        // empty = file stem
  std::optional<std::filesystem::path> truth;    // enables scoring section
};

struct PipelineResult {
  std::filesystem::path report_path;
  nlohmann::json report;
};

// Runs every stage for every input session under out_dir (sessions/<id>/...)
// and assembles the pooled report. The report payload contains no volatile
// data; timestamps go to run_info.txt.
PipelineResult run_pipeline(const std::vector<PipelineInput>& inputs,
                            const EffectiveConfig& cfg,
                            const std::filesystem::path& out_dir);

}  // namespace starspike
