#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "starspike/types.hpp"

namespace starspike {

// How file columns map onto the recording: the time column plus one column
// name per compass direction. Units apply to the whole file.
struct ColumnMap {
  std::string time_column = "t";
  std::array<std::string, kNumDirections> channel_columns = {
      "N", "NE", "E", "SE", "S", "SW", "W", "NW"};
  enum class Units { millivolts, volts };
  Units units = Units::millivolts;
};

// Loads a delimited text export (comma or tab, auto-detected from the header
// row). Empty cells become invalid samples; the sample rate is inferred from
// the median time step; absolute or elapsed time columns both reduce to
// elapsed seconds with t0 preserved.
Recording load_recording(const std::filesystem::path& path,
                         const ColumnMap& spec, std::string session_id = "");

// Writes a recording in the same delimited format load_recording consumes
// (round-trip guarantee used by the synth generator). Millivolts, comma
// delimited, empty cell for invalid samples.
void write_recording_csv(const Recording& rec,
                         const std::filesystem::path& path,
                         const ColumnMap& spec = {});

// Linearly interpolates runs of invalid samples no longer than
// max_gap_interp_samples when bracketed by valid neighbours; longer runs and
// edge runs stay invalid. Valid samples are never altered.
Recording repair_gaps(Recording rec, int max_gap_interp_samples);

// Recording plus per-channel baseline residuals.
struct DetrendedRecording {
  Recording base;
  std::array<std::vector<double>, kNumDirections> residual_mV;
  // Validity of the residuals: base validity minus samples whose baseline
  // window held no valid data.
  std::array<std::vector<uint8_t>, kNumDirections> valid;
  double window_s = 0.0;

  size_t n_samples() const { return base.n_samples(); }
};

// Subtracts a centered moving-median baseline (window shrinking symmetrically
// at the edges, invalid samples excluded from the window).
DetrendedRecording detrend(Recording rec, double window_s);

// Zero-mean unit-variance residuals per channel (population convention).
struct NormalisedChannels {
  std::array<std::vector<double>, kNumDirections> values;
  std::array<std::vector<uint8_t>, kNumDirections> valid;
  std::array<uint8_t, kNumDirections> excluded{};  // zero variance / too few samples
  double sample_rate_hz = 1.0;

  bool channel_usable(int i) const { return !excluded[static_cast<size_t>(i)]; }
};

NormalisedChannels normalise(const DetrendedRecording& det);

}  // namespace starspike
