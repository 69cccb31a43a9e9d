#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starspike/ingest.hpp"
#include "starspike/types.hpp"

namespace starspike {

// Flat key-value config file with one [section] per module:
//
//   [analysis]
//   detrend_window_s = 3600
//   reference_direction = E
//
//   [ingest]
//   time_column = t
//   col_N = N
//   units = mV
//
// '#' and ';' start comments. Unknown sections or keys are ConfigErrors.
// Precedence: CLI flags > file > defaults, and the echo records which source
// won for every key.
struct ConfigEntry {
  std::string key;     // "analysis.detrend_window_s"
  std::string value;   // canonical textual value
  std::string source;  // "default" | "file" | "flag"
};

struct EffectiveConfig {
  AnalysisConfig analysis;
  ColumnMap ingest;
  std::vector<ConfigEntry> echo;  // every key, stable order
};

// Raw file contents: section -> key -> value.
using ConfigFileValues = std::map<std::string, std::map<std::string, std::string>>;

ConfigFileValues parse_config_file(const std::filesystem::path& path);

// Flag overrides use the same dotted keys as the echo.
using FlagOverrides = std::map<std::string, std::string>;

// Builds the effective config, validating types and ranges. file_values may
// be empty (defaults only).
EffectiveConfig resolve_config(const ConfigFileValues& file_values,
                               const FlagOverrides& flags);

}  // namespace starspike
