#include "starspike/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "starspike/error.hpp"
#include "starspike/kernels.hpp"
#include "starspike/parallel.hpp"
#include "starspike/robust.hpp"
#include "starspike/sliding_median.hpp"
#include "starspike/tables.hpp"

namespace starspike {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
    size_t b = 0;
    while (b < f.size() && f[b] == ' ') ++b;
    f.erase(0, b);
  }
  return fields;
}

double parse_double(const std::string& field, size_t row,
                    const std::string& column) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw InputError("data row " + std::to_string(row) + ", column \"" +
                     column + "\": cannot parse \"" + field + "\" as a number");
  return value;
}

}  // namespace

Recording load_recording(const std::filesystem::path& path,
                         const ColumnMap& spec, std::string session_id) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open recording file: " + path.string());

  std::string header;
  if (!std::getline(in, header))
    throw InputError(path.string() + ": empty file, expected a header row");
  const char delim = header.find('\t') != std::string::npos ? '\t' : ',';
  const std::vector<std::string> columns = split_line(header, delim);

  auto column_index = [&](const std::string& name) {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
      throw InputError(path.string() + ": missing column \"" + name + "\"");
    return static_cast<size_t>(it - columns.begin());
  };

  const size_t time_idx = column_index(spec.time_column);
  std::array<size_t, kNumDirections> chan_idx{};
  for (int d = 0; d < kNumDirections; ++d)
    chan_idx[static_cast<size_t>(d)] =
        column_index(spec.channel_columns[static_cast<size_t>(d)]);

  const double unit_scale = spec.units == ColumnMap::Units::volts ? 1000.0 : 1.0;

  std::vector<double> times;
  Recording rec;
  for (int d = 0; d < kNumDirections; ++d)
    rec.channels[static_cast<size_t>(d)].direction = Direction{d};

  std::string line;
  size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    const std::vector<std::string> fields = split_line(line, delim);
    if (fields.size() != columns.size())
      throw InputError(path.string() + ": data row " + std::to_string(row) +
                       " has " + std::to_string(fields.size()) +
                       " fields, header has " + std::to_string(columns.size()));
    const double t = parse_double(fields[time_idx], row, spec.time_column);
    if (!times.empty() && !(t > times.back()))
      throw InputError(path.string() + ": time column not strictly increasing at data row " +
                       std::to_string(row));
    times.push_back(t);
    for (int d = 0; d < kNumDirections; ++d) {
      auto& ch = rec.channels[static_cast<size_t>(d)];
      const std::string& cell = fields[chan_idx[static_cast<size_t>(d)]];
      if (cell.empty()) {
        ch.samples_mV.push_back(0.0);
        ch.valid.push_back(0);
      } else {
        ch.samples_mV.push_back(
            unit_scale *
            parse_double(cell, row, spec.channel_columns[static_cast<size_t>(d)]));
        ch.valid.push_back(1);
      }
    }
  }

  if (times.size() < 2)
    throw InputError(path.string() + ": needs at least 2 data rows");

  std::vector<double> steps(times.size() - 1);
  for (size_t i = 0; i + 1 < times.size(); ++i) steps[i] = times[i + 1] - times[i];
  const double step = median(steps);
  if (!(step > 0.0))
    throw InputError(path.string() + ": cannot infer a positive sample rate");

  rec.sample_rate_hz = 1.0 / step;
  rec.t0_s = times.front();
  rec.session_id = session_id.empty() ? path.stem().string() : std::move(session_id);
  rec.validate();
  return rec;
}

void write_recording_csv(const Recording& rec,
                         const std::filesystem::path& path,
                         const ColumnMap& spec) {
  std::ostringstream out;
  out << spec.time_column;
  for (int d = 0; d < kNumDirections; ++d)
    out << ',' << spec.channel_columns[static_cast<size_t>(d)];
  out << '\n';
  const size_t n = rec.n_samples();
  for (size_t i = 0; i < n; ++i) {
    out << format_number(rec.time_at(i));
    for (int d = 0; d < kNumDirections; ++d) {
      const auto& ch = rec.channels[static_cast<size_t>(d)];
      out << ',';
      if (ch.valid[i]) out << format_number(ch.samples_mV[i]);
    }
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

Recording repair_gaps(Recording rec, int max_gap_interp_samples) {
  if (max_gap_interp_samples <= 0) return rec;
  const size_t n = rec.n_samples();
  for (auto& ch : rec.channels) {
    size_t i = 0;
    while (i < n) {
      if (ch.valid[i]) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < n && !ch.valid[j]) ++j;
      // invalid run [i, j); interpolable only when bracketed by valid samples
      const size_t run = j - i;
      if (i > 0 && j < n && run <= static_cast<size_t>(max_gap_interp_samples)) {
        const double left = ch.samples_mV[i - 1];
        const double right = ch.samples_mV[j];
        const double denom = static_cast<double>(run + 1);
        for (size_t k = i; k < j; ++k) {
          const double frac = static_cast<double>(k - i + 1) / denom;
          ch.samples_mV[k] = left + frac * (right - left);
          ch.valid[k] = 1;
        }
      }
      i = j;
    }
  }
  return rec;
}

namespace {

// Centered moving median with symmetric shrink at the edges: the window for
// index i is [i-h_i, i+h_i] with h_i = min(h, i, n-1-i), restricted to valid
// samples. Both window ends are non-decreasing in i, so one forward sweep
// with an order-statistics container does the whole channel in O(n log w).
void detrend_channel(const ChannelSeries& ch, long half,
                     std::vector<double>& residual,
                     std::vector<uint8_t>& out_valid) {
  const long n = static_cast<long>(ch.size());
  residual.assign(static_cast<size_t>(n), 0.0);
  out_valid.assign(static_cast<size_t>(n), 0);
  SlidingMedian window;
  long inserted_to = -1;  // highest index already inserted
  long removed_to = 0;    // lowest index still inside the window
  for (long i = 0; i < n; ++i) {
    const long h = std::min({half, i, n - 1 - i});
    const long hi = i + h;
    const long lo = i - h;
    while (inserted_to < hi) {
      ++inserted_to;
      if (ch.valid[static_cast<size_t>(inserted_to)])
        window.insert(ch.samples_mV[static_cast<size_t>(inserted_to)]);
    }
    while (removed_to < lo) {
      if (ch.valid[static_cast<size_t>(removed_to)])
        window.erase(ch.samples_mV[static_cast<size_t>(removed_to)]);
      ++removed_to;
    }
    if (!ch.valid[static_cast<size_t>(i)]) continue;
    const auto baseline = window.median();
    if (!baseline) continue;  // no valid data in the whole window
    residual[static_cast<size_t>(i)] =
        ch.samples_mV[static_cast<size_t>(i)] - *baseline;
    out_valid[static_cast<size_t>(i)] = 1;
  }
}

}  // namespace

DetrendedRecording detrend(Recording rec, double window_s) {
  rec.validate();
  if (!(window_s >= 3.0 / rec.sample_rate_hz))
    throw ConfigError("detrend window (" + std::to_string(window_s) +
                      " s) must cover at least 3 samples");
  const long half =
      std::max<long>(1, std::lround(window_s * rec.sample_rate_hz / 2.0));
  DetrendedRecording det;
  det.window_s = window_s;
  det.base = std::move(rec);
  parallel_channels([&](int c) {
    detrend_channel(det.base.channels[static_cast<size_t>(c)], half,
                    det.residual_mV[static_cast<size_t>(c)],
                    det.valid[static_cast<size_t>(c)]);
  });
  return det;
}

NormalisedChannels normalise(const DetrendedRecording& det) {
  NormalisedChannels norm;
  norm.sample_rate_hz = det.base.sample_rate_hz;
  parallel_channels([&](int c) {
    const auto& res = det.residual_mV[static_cast<size_t>(c)];
    const auto& valid = det.valid[static_cast<size_t>(c)];
    norm.valid[static_cast<size_t>(c)] = valid;
    auto& out = norm.values[static_cast<size_t>(c)];
    out.assign(res.size(), 0.0);
    const kernels::Moments m = kernels::masked_moments(res, valid);
    if (m.n < 2) {
      norm.excluded[static_cast<size_t>(c)] = 1;
      std::fill(norm.valid[static_cast<size_t>(c)].begin(),
                norm.valid[static_cast<size_t>(c)].end(), uint8_t{0});
      return;
    }
    const double n = static_cast<double>(m.n);
    const double mean = m.sum / n;
    const double var = std::max(0.0, m.sum_sq / n - mean * mean);
    if (var <= 0.0) {
      norm.excluded[static_cast<size_t>(c)] = 1;
      std::fill(norm.valid[static_cast<size_t>(c)].begin(),
                norm.valid[static_cast<size_t>(c)].end(), uint8_t{0});
      return;
    }
    kernels::scale_offset(res, valid, mean, 1.0 / std::sqrt(var), out);
  });
  return norm;
}

}  // namespace starspike
