#include "starspike/report.hpp"

#include <algorithm>
#include <cmath>

#include "starspike/error.hpp"
#include "starspike/pipeline.hpp"
#include "starspike/robust.hpp"
#include "starspike/tables.hpp"

namespace starspike {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string cell(std::optional<double> v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

PooledReport pool_sessions(const std::vector<SessionArtifacts>& sessions,
                           const EffectiveConfig& cfg) {
  if (sessions.empty()) throw InputError("report needs at least one session");
  PooledReport pooled;
  for (const auto& s : sessions) pooled.session_ids.push_back(s.session_id);

  // Per-direction event-level pooling.
  std::vector<double> all_isis;
  for (int d = 0; d < kNumDirections; ++d) {
    auto& ps = pooled.stats[static_cast<size_t>(d)];
    ps.direction = Direction{d};
    std::vector<double> amps;
    std::vector<double> session_rates;
    for (const auto& s : sessions) {
      const auto& train = s.trains[static_cast<size_t>(d)];
      const auto& st = s.stats[static_cast<size_t>(d)];
      ps.spike_count += st.spike_count;
      ps.observed_duration_s += train.observed_duration_s;
      for (const auto& ev : train.spikes) amps.push_back(ev.amplitude_mV);
      ps.isi_s.insert(ps.isi_s.end(), st.isi_s.begin(), st.isi_s.end());
      session_rates.push_back(st.rate_per_min);
      for (const auto& b : s.bursts[static_cast<size_t>(d)])
        pooled.bursts[static_cast<size_t>(d)].push_back(b);
    }
    if (ps.observed_duration_s > 0.0)
      ps.rate_per_min = ps.spike_count / (ps.observed_duration_s / 60.0);
    if (!amps.empty()) {
      std::sort(amps.begin(), amps.end());
      ps.amplitude_q1_mV = quantile_sorted(amps, 0.25);
      ps.amplitude_median_mV = quantile_sorted(amps, 0.5);
      ps.amplitude_q3_mV = quantile_sorted(amps, 0.75);
      ps.amplitude_max_mV = amps.back();
    }
    pooled.amplitudes_mV.insert(pooled.amplitudes_mV.end(), amps.begin(),
                                amps.end());
    ps.mean_session_rate_per_min = mean(session_rates);
    ps.sd_session_rate_per_min = std::sqrt(variance_population(session_rates));
    all_isis.insert(all_isis.end(), ps.isi_s.begin(), ps.isi_s.end());
  }
  pooled.isi_short = isi_histogram(all_isis, kIsiShortBin_s, kIsiShortMax_s);
  pooled.isi_long = isi_histogram(all_isis, kIsiLongBin_s, kIsiLongMax_s);

  // Correlation: per-pair mean across the sessions where the pair is
  // defined; joint counts summed; a channel stays excluded only if it is
  // excluded in every session.
  for (auto& row : pooled.correlation.values) row.fill(kNaN);
  for (int i = 0; i < kNumDirections; ++i) {
    bool always_excluded = true;
    for (const auto& s : sessions)
      always_excluded =
          always_excluded && s.correlation.excluded[static_cast<size_t>(i)];
    pooled.correlation.excluded[static_cast<size_t>(i)] = always_excluded ? 1 : 0;
  }
  for (int i = 0; i < kNumDirections; ++i) {
    for (int j = 0; j < kNumDirections; ++j) {
      double sum = 0.0;
      long long n_overlap = 0;
      int defined = 0;
      for (const auto& s : sessions) {
        n_overlap += s.correlation.n_overlap[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (s.correlation.defined(i, j)) {
          sum += s.correlation.values[static_cast<size_t>(i)][static_cast<size_t>(j)];
          ++defined;
        }
      }
      pooled.correlation.n_overlap[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          n_overlap;
      if (defined > 0)
        pooled.correlation.values[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            sum / defined;
    }
  }
  pooled.decay = separation_decay(pooled.correlation, cfg.analysis.separation_metric);

  // Propagation: concatenate delay events, recompute summaries.
  pooled.delays.reference = cfg.analysis.reference_direction;
  pooled.delays.window_s = cfg.analysis.propagation_window_s;
  for (const auto& s : sessions) {
    if (s.delays.reference.index != pooled.delays.reference.index ||
        s.delays.window_s != pooled.delays.window_s)
      throw InputError("session " + s.session_id +
                       " propagation settings differ from the report config");
    for (const auto& ev : s.delays.events) pooled.delays.events.push_back(ev);
  }
  if (!pooled.delays.events.empty())
    pooled.propagation = summarize_propagation(pooled.delays);
  return pooled;
}

std::array<BurstSummaryRow, kNumDirections> burst_summary(
    const std::array<std::vector<Burst>, kNumDirections>& bursts) {
  std::array<BurstSummaryRow, kNumDirections> rows;
  for (int d = 0; d < kNumDirections; ++d) {
    auto& row = rows[static_cast<size_t>(d)];
    row.direction = Direction{d};
    const auto& list = bursts[static_cast<size_t>(d)];
    row.n_bursts = static_cast<int>(list.size());
    if (list.empty()) continue;
    std::vector<double> sizes, durations;
    for (const auto& b : list) {
      sizes.push_back(static_cast<double>(b.size));
      durations.push_back(b.duration_s);
    }
    std::sort(sizes.begin(), sizes.end());
    std::sort(durations.begin(), durations.end());
    row.size_q1 = quantile_sorted(sizes, 0.25);
    row.size_median = quantile_sorted(sizes, 0.5);
    row.size_q3 = quantile_sorted(sizes, 0.75);
    row.size_max = sizes.back();
    row.duration_q1_s = quantile_sorted(durations, 0.25);
    row.duration_median_s = quantile_sorted(durations, 0.5);
    row.duration_q3_s = quantile_sorted(durations, 0.75);
    row.duration_max_s = durations.back();
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

Table rates_bar_table(const std::array<PooledDirectionStats, kNumDirections>& stats,
                      size_t n_sessions) {
  Table t;
  t.meta = {"table: rates_bar"};
  t.header = {"direction",        "spike_count",
              "observed_min",     "rate_per_min",
              "mean_session_rate_per_min", "sd_session_rate_per_min",
              "n_sessions"};
  for (const auto& s : stats) {
    t.add_row({std::string(s.direction.label()),
               std::to_string(s.spike_count),
               format_number(s.observed_duration_s / 60.0),
               format_number(s.rate_per_min),
               format_number(s.mean_session_rate_per_min),
               format_number(s.sd_session_rate_per_min),
               std::to_string(n_sessions)});
  }
  return t;
}

Table rates_polar_table(const std::array<PooledDirectionStats, kNumDirections>& stats) {
  Table t;
  t.meta = {"table: rates_polar"};
  t.header = {"angle_deg", "direction", "rate_per_min"};
  for (const auto& s : stats)
    t.add_row({format_number(s.direction.angle_deg()),
               std::string(s.direction.label()), format_number(s.rate_per_min)});
  return t;
}

Table amplitude_box_table(const std::array<PooledDirectionStats, kNumDirections>& stats) {
  Table t;
  t.meta = {"table: amplitude_box"};
  t.header = {"direction", "n_spikes", "q1_mV", "median_mV", "q3_mV", "max_mV"};
  for (const auto& s : stats)
    t.add_row({std::string(s.direction.label()), std::to_string(s.spike_count),
               cell(s.amplitude_q1_mV), cell(s.amplitude_median_mV),
               cell(s.amplitude_q3_mV), cell(s.amplitude_max_mV)});
  return t;
}

Table amplitude_hist_table(const std::vector<double>& amplitudes) {
  const size_t n_bins = static_cast<size_t>(kAmpHistMax_mV / kAmpHistBin_mV);
  std::vector<long> counts(n_bins, 0);
  long overflow = 0;
  for (double a : amplitudes) {
    if (a >= kAmpHistMax_mV) {
      ++overflow;
      continue;
    }
    size_t bin = static_cast<size_t>(a / kAmpHistBin_mV);
    if (bin >= n_bins) bin = n_bins - 1;
    ++counts[bin];
  }
  Table t;
  t.meta = {"table: amplitude_hist", "overflow: " + std::to_string(overflow)};
  t.header = {"bin_lo_mV", "bin_hi_mV", "count"};
  for (size_t b = 0; b < n_bins; ++b)
    t.add_row({format_number(static_cast<double>(b) * kAmpHistBin_mV),
               format_number(static_cast<double>(b + 1) * kAmpHistBin_mV),
               std::to_string(counts[b])});
  return t;
}

Table isi_hist_table(const IsiHistogram& h, const std::string& name) {
  Table t;
  t.meta = {"table: " + name, "overflow: " + std::to_string(h.overflow)};
  t.header = {"bin_lo_s", "bin_hi_s", "count"};
  for (size_t b = 0; b < h.counts.size(); ++b)
    t.add_row({format_number(static_cast<double>(b) * h.bin_width_s),
               format_number(static_cast<double>(b + 1) * h.bin_width_s),
               std::to_string(h.counts[b])});
  return t;
}

Table bursts_long_table(const std::array<std::vector<Burst>, kNumDirections>& bursts,
                        const std::string& session) {
  Table t;
  t.meta = {"table: bursts_long"};
  t.header = {"session", "direction", "onset_s", "duration_s", "size"};
  for (const auto& list : bursts)
    for (const auto& b : list)
      t.add_row({session, std::string(b.direction.label()),
                 format_number(b.onset_s), format_number(b.duration_s),
                 std::to_string(b.size)});
  return t;
}

Table burst_summary_table(const std::array<BurstSummaryRow, kNumDirections>& rows) {
  Table t;
  t.meta = {"table: burst_summary"};
  t.header = {"direction",     "n_bursts",      "size_q1",
              "size_median",   "size_q3",       "size_max",
              "duration_q1_s", "duration_median_s", "duration_q3_s",
              "duration_max_s"};
  for (const auto& r : rows)
    t.add_row({std::string(r.direction.label()), std::to_string(r.n_bursts),
               cell(r.size_q1), cell(r.size_median), cell(r.size_q3),
               cell(r.size_max), cell(r.duration_q1_s),
               cell(r.duration_median_s), cell(r.duration_q3_s),
               cell(r.duration_max_s)});
  return t;
}

Table correlation_matrix_table(const CorrelationMatrix& m) {
  Table t;
  t.meta = {"table: correlation_matrix"};
  t.header = {"i_label", "j_label", "r", "n_overlap"};
  for (int i = 0; i < kNumDirections; ++i)
    for (int j = 0; j < kNumDirections; ++j)
      t.add_row({std::string(Direction{i}.label()),
                 std::string(Direction{j}.label()),
                 m.defined(i, j)
                     ? format_number(m.values[static_cast<size_t>(i)][static_cast<size_t>(j)])
                     : std::string(),
                 std::to_string(m.n_overlap[static_cast<size_t>(i)][static_cast<size_t>(j)])});
  return t;
}

Table decay_table(const SeparationDecay& d) {
  Table t;
  t.meta = {"table: correlation_decay",
            "metric: " + std::string(metric_name(d.metric))};
  t.header = {"separation", "mean_r", "sd_r", "n_pairs"};
  for (const auto& b : d.bins)
    t.add_row({std::to_string(b.separation), format_number(b.mean_r),
               format_number(b.sd_r), std::to_string(b.n_pairs)});
  return t;
}

Table delay_summary_table(const PropagationSummary& s) {
  Table t;
  t.meta = {"table: delay_summary",
            "reference: " + std::string(s.reference.label()),
            "window_s: " + format_number(s.window_s)};
  t.header = {"direction", "median_delay_s", "q1_s",    "q3_s",
              "match_rate", "n_matched",     "n_events"};
  for (const auto& d : s.directions)
    t.add_row({std::string(d.direction.label()), cell(d.median_s), cell(d.q1_s),
               cell(d.q3_s), format_number(d.match_rate),
               std::to_string(d.n_matched), std::to_string(s.n_onsets)});
  return t;
}

Table delay_events_table(const DelayTable& table, const std::string& session) {
  Table t;
  t.meta = {"table: delay_events",
            "reference: " + std::string(table.reference.label()),
            "window_s: " + format_number(table.window_s)};
  t.header = {"session", "ref_onset_s", "direction", "matched", "delay_s"};
  for (const auto& ev : table.events) {
    for (int d = 0; d < kNumDirections; ++d) {
      if (d == table.reference.index) continue;
      const auto& delay = ev.delay_s[static_cast<size_t>(d)];
      t.add_row({session, format_number(ev.onset_s),
                 std::string(Direction{d}.label()), delay ? "1" : "0",
                 delay ? format_number(*delay) : std::string()});
    }
  }
  return t;
}

Table delay_polar_table(const PropagationSummary& s) {
  std::array<std::optional<double>, kNumDirections> medians;
  for (const auto& d : s.directions)
    medians[static_cast<size_t>(d.direction.index)] = d.median_s;
  Table t;
  t.meta = {"table: delay_polar",
            "reference: " + std::string(s.reference.label())};
  t.header = {"angle_deg", "direction", "median_delay_s"};
  for (const auto& e : polar_summary(medians))
    t.add_row({format_number(e.angle_deg), std::string(e.direction.label()),
               cell(e.value)});
  return t;
}

Table match_rates_table(const PropagationSummary& s) {
  Table t;
  t.meta = {"table: match_rates",
            "reference: " + std::string(s.reference.label()),
            "window_s: " + format_number(s.window_s)};
  t.header = {"direction", "match_rate", "n_matched", "n_events"};
  for (const auto& d : s.directions)
    t.add_row({std::string(d.direction.label()), format_number(d.match_rate),
               std::to_string(d.n_matched), std::to_string(s.n_onsets)});
  return t;
}

std::vector<double> collect_amplitudes(
    const std::array<SpikeTrain, kNumDirections>& trains) {
  std::vector<double> amps;
  for (const auto& tr : trains)
    for (const auto& ev : tr.spikes) amps.push_back(ev.amplitude_mV);
  return amps;
}

}  // namespace

void write_session_tables(const SessionArtifacts& art,
                          const std::filesystem::path& dir) {
  // Session-level stats reuse the pooled row shape with one session.
  std::array<PooledDirectionStats, kNumDirections> stats;
  for (int d = 0; d < kNumDirections; ++d) {
    auto& ps = stats[static_cast<size_t>(d)];
    const auto& st = art.stats[static_cast<size_t>(d)];
    const auto& train = art.trains[static_cast<size_t>(d)];
    ps.direction = Direction{d};
    ps.spike_count = st.spike_count;
    ps.observed_duration_s = train.observed_duration_s;
    ps.rate_per_min = st.rate_per_min;
    ps.amplitude_q1_mV = st.amplitude_q1_mV;
    ps.amplitude_median_mV = st.amplitude_median_mV;
    ps.amplitude_q3_mV = st.amplitude_q3_mV;
    ps.amplitude_max_mV = st.amplitude_max_mV;
    ps.mean_session_rate_per_min = st.rate_per_min;
    ps.sd_session_rate_per_min = 0.0;
  }
  write_table(rates_bar_table(stats, 1), dir / "rates_bar.tsv");
  write_table(rates_polar_table(stats), dir / "rates_polar.tsv");
  write_table(amplitude_box_table(stats), dir / "amplitude_box.tsv");
  write_table(amplitude_hist_table(collect_amplitudes(art.trains)),
              dir / "amplitude_hist.tsv");
  write_table(isi_hist_table(art.isi_short, "isi_hist_1h"), dir / "isi_hist_1h.tsv");
  write_table(isi_hist_table(art.isi_long, "isi_hist_10h"), dir / "isi_hist_10h.tsv");
  write_table(bursts_long_table(art.bursts, art.session_id), dir / "bursts_long.tsv");
  write_table(burst_summary_table(burst_summary(art.bursts)),
              dir / "burst_summary.tsv");
  write_table(correlation_matrix_table(art.correlation),
              dir / "correlation_matrix.tsv");
  write_table(decay_table(art.decay), dir / "correlation_decay.tsv");
  write_table(delay_events_table(art.delays, art.session_id),
              dir / "delay_events.tsv");
  if (art.propagation) {
    write_table(delay_summary_table(*art.propagation), dir / "delay_summary.tsv");
    write_table(delay_polar_table(*art.propagation), dir / "delay_polar.tsv");
    write_table(match_rates_table(*art.propagation), dir / "match_rates.tsv");
  }
}

void write_pooled_tables(const PooledReport& pooled,
                         const std::filesystem::path& dir) {
  write_table(rates_bar_table(pooled.stats, pooled.session_ids.size()),
              dir / "rates_bar.tsv");
  write_table(rates_polar_table(pooled.stats), dir / "rates_polar.tsv");
  write_table(amplitude_box_table(pooled.stats), dir / "amplitude_box.tsv");
  write_table(amplitude_hist_table(pooled.amplitudes_mV),
              dir / "amplitude_hist.tsv");
  write_table(isi_hist_table(pooled.isi_short, "isi_hist_1h"),
              dir / "isi_hist_1h.tsv");
  write_table(isi_hist_table(pooled.isi_long, "isi_hist_10h"),
              dir / "isi_hist_10h.tsv");
  Table bursts = bursts_long_table(pooled.bursts, "pooled");
  write_table(bursts, dir / "bursts_long.tsv");
  write_table(burst_summary_table(burst_summary(pooled.bursts)),
              dir / "burst_summary.tsv");
  write_table(correlation_matrix_table(pooled.correlation),
              dir / "correlation_matrix.tsv");
  write_table(decay_table(pooled.decay), dir / "correlation_decay.tsv");
  write_table(delay_events_table(pooled.delays, "pooled"),
              dir / "delay_events.tsv");
  if (pooled.propagation) {
    write_table(delay_summary_table(*pooled.propagation),
                dir / "delay_summary.tsv");
    write_table(delay_polar_table(*pooled.propagation), dir / "delay_polar.tsv");
    write_table(match_rates_table(*pooled.propagation), dir / "match_rates.tsv");
  }
}

// ---------------------------------------------------------------------------
// JSON serializers

namespace report_json {

json number_or_null(std::optional<double> v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

json direction_stats(const DirectionStats& s, double observed_s, bool flat) {
  return {{"direction", std::string(s.direction.label())},
          {"spike_count", s.spike_count},
          {"observed_duration_s", observed_s},
          {"flat", flat},
          {"rate_per_min", s.rate_per_min},
          {"amplitude_q1_mV", number_or_null(s.amplitude_q1_mV)},
          {"amplitude_median_mV", number_or_null(s.amplitude_median_mV)},
          {"amplitude_q3_mV", number_or_null(s.amplitude_q3_mV)},
          {"amplitude_max_mV", number_or_null(s.amplitude_max_mV)}};
}

json isi_histogram(const IsiHistogram& h) {
  return {{"bin_width_s", h.bin_width_s},
          {"max_s", h.max_s},
          {"counts", h.counts},
          {"overflow", h.overflow}};
}

json correlation(const CorrelationMatrix& m) {
  json values = json::array();
  json overlap = json::array();
  for (int i = 0; i < kNumDirections; ++i) {
    json vrow = json::array();
    json orow = json::array();
    for (int j = 0; j < kNumDirections; ++j) {
      if (m.defined(i, j))
        vrow.push_back(m.values[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      else
        vrow.push_back(nullptr);
      orow.push_back(m.n_overlap[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
    values.push_back(vrow);
    overlap.push_back(orow);
  }
  json excluded = json::array();
  for (int i = 0; i < kNumDirections; ++i)
    if (m.excluded[static_cast<size_t>(i)])
      excluded.push_back(std::string(Direction{i}.label()));
  return {{"values", values}, {"n_overlap", overlap}, {"excluded", excluded}};
}

json separation_decay(const SeparationDecay& d) {
  json bins = json::array();
  for (const auto& b : d.bins)
    bins.push_back({{"separation", b.separation},
                    {"mean_r", b.mean_r},
                    {"sd_r", b.sd_r},
                    {"n_pairs", b.n_pairs}});
  return {{"metric", std::string(metric_name(d.metric))}, {"bins", bins}};
}

json delay_events(const DelayTable& t) {
  json events = json::array();
  for (const auto& ev : t.events) {
    json delays = json::array();
    for (int d = 0; d < kNumDirections; ++d)
      delays.push_back(number_or_null(ev.delay_s[static_cast<size_t>(d)]));
    events.push_back({{"onset_s", ev.onset_s}, {"delay_s", delays}});
  }
  return events;
}

json propagation_summary(const PropagationSummary& s) {
  json dirs = json::array();
  for (const auto& d : s.directions)
    dirs.push_back({{"direction", std::string(d.direction.label())},
                    {"n_matched", d.n_matched},
                    {"match_rate", d.match_rate},
                    {"median_delay_s", number_or_null(d.median_s)},
                    {"q1_s", number_or_null(d.q1_s)},
                    {"q3_s", number_or_null(d.q3_s)}});
  return {{"reference", std::string(s.reference.label())},
          {"window_s", s.window_s},
          {"n_onsets", s.n_onsets},
          {"directions", dirs}};
}

json burst_summary_rows(const std::array<BurstSummaryRow, kNumDirections>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"direction", std::string(r.direction.label())},
                   {"n_bursts", r.n_bursts},
                   {"size_q1", number_or_null(r.size_q1)},
                   {"size_median", number_or_null(r.size_median)},
                   {"size_q3", number_or_null(r.size_q3)},
                   {"size_max", number_or_null(r.size_max)},
                   {"duration_q1_s", number_or_null(r.duration_q1_s)},
                   {"duration_median_s", number_or_null(r.duration_median_s)},
                   {"duration_q3_s", number_or_null(r.duration_q3_s)},
                   {"duration_max_s", number_or_null(r.duration_max_s)}});
  return out;
}

IsiHistogram isi_histogram_from(const json& j) {
  IsiHistogram h;
  h.bin_width_s = j.at("bin_width_s").get<double>();
  h.max_s = j.at("max_s").get<double>();
  h.counts = j.at("counts").get<std::vector<long>>();
  h.overflow = j.at("overflow").get<long>();
  return h;
}

CorrelationMatrix correlation_from(const json& j) {
  CorrelationMatrix m;
  for (int i = 0; i < kNumDirections; ++i) {
    for (int jj = 0; jj < kNumDirections; ++jj) {
      const json& v = j.at("values").at(static_cast<size_t>(i)).at(static_cast<size_t>(jj));
      m.values[static_cast<size_t>(i)][static_cast<size_t>(jj)] =
          v.is_null() ? kNaN : v.get<double>();
      m.n_overlap[static_cast<size_t>(i)][static_cast<size_t>(jj)] =
          j.at("n_overlap").at(static_cast<size_t>(i)).at(static_cast<size_t>(jj)).get<long long>();
    }
  }
  for (const json& label : j.at("excluded"))
    m.excluded[static_cast<size_t>(
        direction_of_label(label.get<std::string>()).index)] = 1;
  return m;
}

SeparationDecay separation_decay_from(const json& j) {
  SeparationDecay d;
  d.metric = metric_of_name(j.at("metric").get<std::string>());
  for (const json& jb : j.at("bins")) {
    SeparationDecay::Bin b;
    b.separation = jb.at("separation").get<int>();
    b.mean_r = jb.at("mean_r").get<double>();
    b.sd_r = jb.at("sd_r").get<double>();
    b.n_pairs = jb.at("n_pairs").get<int>();
    d.bins.push_back(b);
  }
  return d;
}

}  // namespace report_json

}  // namespace starspike
