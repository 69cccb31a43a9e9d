#include "starspike/config.hpp"

#include <charconv>
#include <fstream>

#include "starspike/error.hpp"
#include "starspike/tables.hpp"

namespace starspike {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

}  // namespace

ConfigFileValues parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  ConfigFileValues values;
  std::string section;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                          ": empty section name");
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    if (section.empty())
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": empty key");
    values[section][key] = value;
  }
  return values;
}

namespace {

// One resolvable key: reads the winning textual value, applies it, and
// records the echo entry.
struct Resolver {
  const ConfigFileValues& file;
  const FlagOverrides& flags;
  std::vector<ConfigEntry>& echo;
  std::vector<std::string> consumed_file_keys;

  std::optional<std::string> file_value(const std::string& dotted) {
    const size_t dot = dotted.find('.');
    const auto sec = file.find(dotted.substr(0, dot));
    if (sec == file.end()) return std::nullopt;
    const auto kv = sec->second.find(dotted.substr(dot + 1));
    if (kv == sec->second.end()) return std::nullopt;
    return kv->second;
  }

  // Returns the winning raw value (or nullopt if the default stands) and
  // pushes the echo entry once the caller canonicalises it.
  std::pair<std::optional<std::string>, std::string> winning(
      const std::string& dotted) {
    const auto flag = flags.find(dotted);
    if (flag != flags.end()) return {flag->second, "flag"};
    auto fv = file_value(dotted);
    if (fv) {
      consumed_file_keys.push_back(dotted);
      return {std::move(fv), "file"};
    }
    return {std::nullopt, "default"};
  }

  void echo_entry(const std::string& key, const std::string& value,
                  const std::string& source) {
    echo.push_back({key, value, source});
  }

  double number(const std::string& dotted, double default_value) {
    auto [raw, source] = winning(dotted);
    double v = default_value;
    if (raw) v = parse_number(*raw, "config key " + dotted);
    echo_entry(dotted, format_number(v), source);
    return v;
  }

  int integer(const std::string& dotted, int default_value) {
    auto [raw, source] = winning(dotted);
    int v = default_value;
    if (raw) {
      const double d = parse_number(*raw, "config key " + dotted);
      v = static_cast<int>(d);
      if (static_cast<double>(v) != d)
        throw ConfigError("config key " + dotted + ": expected an integer, got " +
                          *raw);
    }
    echo_entry(dotted, std::to_string(v), source);
    return v;
  }

  std::string text(const std::string& dotted, const std::string& default_value) {
    auto [raw, source] = winning(dotted);
    const std::string v = raw ? *raw : default_value;
    echo_entry(dotted, v, source);
    return v;
  }
};

}  // namespace

EffectiveConfig resolve_config(const ConfigFileValues& file_values,
                               const FlagOverrides& flags) {
  EffectiveConfig cfg;
  Resolver r{file_values, flags, cfg.echo, {}};

  cfg.analysis.detrend_window_s =
      r.number("analysis.detrend_window_s", cfg.analysis.detrend_window_s);
  cfg.analysis.dispersion_k =
      r.number("analysis.dispersion_k", cfg.analysis.dispersion_k);
  cfg.analysis.min_spike_duration_s = r.number(
      "analysis.min_spike_duration_s", cfg.analysis.min_spike_duration_s);
  cfg.analysis.merge_gap_s = r.number("analysis.merge_gap_s", cfg.analysis.merge_gap_s);
  cfg.analysis.burst_gap_s = r.number("analysis.burst_gap_s", cfg.analysis.burst_gap_s);
  cfg.analysis.propagation_window_s = r.number(
      "analysis.propagation_window_s", cfg.analysis.propagation_window_s);
  {
    const std::string label = r.text(
        "analysis.reference_direction",
        std::string(cfg.analysis.reference_direction.label()));
    try {
      cfg.analysis.reference_direction = direction_of_label(label);
    } catch (const InputError& e) {
      throw ConfigError(std::string("analysis.reference_direction: ") + e.what());
    }
  }
  cfg.analysis.separation_metric = metric_of_name(
      r.text("analysis.separation_metric",
             std::string(metric_name(cfg.analysis.separation_metric))));
  cfg.analysis.max_gap_interp_samples = r.integer(
      "analysis.max_gap_interp_samples", cfg.analysis.max_gap_interp_samples);
  cfg.analysis.validate();

  cfg.ingest.time_column = r.text("ingest.time_column", cfg.ingest.time_column);
  for (int d = 0; d < kNumDirections; ++d) {
    const std::string key =
        "ingest.col_" + std::string(Direction{d}.label());
    cfg.ingest.channel_columns[static_cast<size_t>(d)] =
        r.text(key, cfg.ingest.channel_columns[static_cast<size_t>(d)]);
  }
  {
    const std::string units = r.text("ingest.units", "mV");
    if (units == "mV")
      cfg.ingest.units = ColumnMap::Units::millivolts;
    else if (units == "V")
      cfg.ingest.units = ColumnMap::Units::volts;
    else
      throw ConfigError("ingest.units must be mV or V, got \"" + units + "\"");
  }

  // Reject unknown file keys: typos must not silently fall back to defaults.
  for (const auto& [section, kvs] : file_values) {
    for (const auto& [key, value] : kvs) {
      const std::string dotted = section + "." + key;
      bool known = false;
      for (const auto& entry : cfg.echo)
        if (entry.key == dotted) {
          known = true;
          break;
        }
      if (!known) throw ConfigError("unknown config key: " + dotted);
    }
  }
  return cfg;
}

}  // namespace starspike
