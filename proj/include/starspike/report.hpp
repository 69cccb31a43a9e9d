#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "starspike/config.hpp"
#include "starspike/coupling.hpp"
#include "starspike/events.hpp"
#include "starspike/propagation.hpp"

namespace starspike {

struct SessionArtifacts;  // pipeline.hpp

// Event-level pooling across sessions (concatenated spikes/bursts/delays)
// plus the between-session rate statistics the figures need.
struct PooledDirectionStats {
  Direction direction;
  int spike_count = 0;
  double observed_duration_s = 0.0;
  double rate_per_min = 0.0;  // pooled events / pooled duration
  std::optional<double> amplitude_q1_mV, amplitude_median_mV, amplitude_q3_mV;
  std::optional<double> amplitude_max_mV;
  double mean_session_rate_per_min = 0.0;
  double sd_session_rate_per_min = 0.0;  // population sd over sessions
  std::vector<double> isi_s;             // concatenated within-session ISIs
};

struct BurstSummaryRow {
  Direction direction;
  int n_bursts = 0;
  std::optional<double> size_q1, size_median, size_q3, size_max;
  std::optional<double> duration_q1_s, duration_median_s, duration_q3_s,
      duration_max_s;
};

struct PooledReport {
  std::vector<std::string> session_ids;
  std::array<PooledDirectionStats, kNumDirections> stats;
  std::vector<double> amplitudes_mV;  // all pooled spike amplitudes
  IsiHistogram isi_short, isi_long;
  std::array<std::vector<Burst>, kNumDirections> bursts;  // concatenated
  CorrelationMatrix correlation;  // per-pair mean over sessions, n summed
  SeparationDecay decay;
  DelayTable delays;  // concatenated events
  std::optional<PropagationSummary> propagation;
};

PooledReport pool_sessions(const std::vector<SessionArtifacts>& sessions,
                           const EffectiveConfig& cfg);

std::array<BurstSummaryRow, kNumDirections> burst_summary(
    const std::array<std::vector<Burst>, kNumDirections>& bursts);

// Plot-ready TSV tables, one per figure family, under dir.
void write_session_tables(const SessionArtifacts& art,
                          const std::filesystem::path& dir);
void write_pooled_tables(const PooledReport& pooled,
                         const std::filesystem::path& dir);

// JSON serializers shared by session artifacts and the report payload.
namespace report_json {
nlohmann::json number_or_null(std::optional<double> v);
nlohmann::json direction_stats(const DirectionStats& s, double observed_s,
                               bool flat);
nlohmann::json isi_histogram(const IsiHistogram& h);
nlohmann::json correlation(const CorrelationMatrix& m);
nlohmann::json separation_decay(const SeparationDecay& d);
nlohmann::json delay_events(const DelayTable& t);
nlohmann::json propagation_summary(const PropagationSummary& s);
nlohmann::json burst_summary_rows(
    const std::array<BurstSummaryRow, kNumDirections>& rows);

IsiHistogram isi_histogram_from(const nlohmann::json& j);
CorrelationMatrix correlation_from(const nlohmann::json& j);
SeparationDecay separation_decay_from(const nlohmann::json& j);
}  // namespace report_json

}  // namespace starspike
