#include "starspike/direction.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>

#include "starspike/error.hpp"

namespace starspike {

namespace {
constexpr std::array<std::string_view, kNumDirections> kLabels = {
    "N", "NE", "E", "SE", "S", "SW", "W", "NW"};
}

std::string_view Direction::label() const {
  if (index < 0 || index >= kNumDirections)
    invariant_failure("Direction index out of range: " + std::to_string(index));
  return kLabels[static_cast<size_t>(index)];
}

const std::array<Direction, kNumDirections>& all_directions() {
  static const std::array<Direction, kNumDirections> dirs = {
      Direction{0}, Direction{1}, Direction{2}, Direction{3},
      Direction{4}, Direction{5}, Direction{6}, Direction{7}};
  return dirs;
}

Direction direction_of_label(std::string_view label) {
  std::string upper(label);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (int i = 0; i < kNumDirections; ++i) {
    if (upper == kLabels[static_cast<size_t>(i)]) return Direction{i};
  }
  throw InputError("unknown compass label: \"" + std::string(label) +
                   "\" (expected one of N, NE, E, SE, S, SW, W, NW)");
}

std::string_view metric_name(SeparationMetric m) {
  return m == SeparationMetric::linear ? "linear" : "circular";
}

SeparationMetric metric_of_name(std::string_view name) {
  if (name == "linear") return SeparationMetric::linear;
  if (name == "circular") return SeparationMetric::circular;
  throw ConfigError("unknown separation metric: \"" + std::string(name) +
                    "\" (expected linear or circular)");
}

int separation(Direction a, Direction b, SeparationMetric metric) {
  const int d = std::abs(a.index - b.index);
  if (metric == SeparationMetric::linear) return d;
  return std::min(d, kNumDirections - d);
}

}  // namespace starspike
