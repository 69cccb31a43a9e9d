#pragma once

#include <array>
#include <vector>

#include "starspike/ingest.hpp"

namespace starspike {

// Pairwise Pearson matrix on normalised detrended channels. NaN marks
// undefined entries (excluded channel or joint overlap below the floor).
struct CorrelationMatrix {
  std::array<std::array<double, kNumDirections>, kNumDirections> values{};
  std::array<std::array<long long, kNumDirections>, kNumDirections> n_overlap{};
  std::array<uint8_t, kNumDirections> excluded{};

  bool defined(int i, int j) const;
};

// Minimum jointly valid samples for a pair to be defined.
inline constexpr long long kMinPairOverlap = 100;

// Throws InputError("insufficient joint coverage") when fewer than two
// channels are usable or every off-diagonal pair is undefined.
CorrelationMatrix correlation_matrix(const NormalisedChannels& norm);

struct SeparationDecay {
  SeparationMetric metric = SeparationMetric::linear;
  struct Bin {
    int separation = 0;
    double mean_r = 0.0;
    double sd_r = 0.0;  // population sd over pairs
    int n_pairs = 0;
  };
  std::vector<Bin> bins;  // ascending separation, only separations >= 1
};

SeparationDecay separation_decay(const CorrelationMatrix& m,
                                 SeparationMetric metric);

}  // namespace starspike
