#pragma once

#include <array>
#include <compare>
#include <string_view>

namespace starspike {

inline constexpr int kNumDirections = 8;

// One of the eight differential channels of the star array, ordered
// clockwise from North: N=0, NE=1, ..., NW=7. Angle is 45*index degrees.
struct Direction {
  int index = 0;

  constexpr auto operator<=>(const Direction&) const = default;

  std::string_view label() const;
  constexpr double angle_deg() const { return 45.0 * index; }
};

// All eight directions in index order (N first, NW last).
const std::array<Direction, kNumDirections>& all_directions();

// Case-insensitive compass label lookup; throws InputError on unknown labels.
Direction direction_of_label(std::string_view label);

enum class SeparationMetric { linear, circular };

std::string_view metric_name(SeparationMetric m);
SeparationMetric metric_of_name(std::string_view name);  // throws ConfigError

// Index distance between two channels: linear |i-j| (the figure convention)
// or ring distance min(|i-j|, 8-|i-j|).
int separation(Direction a, Direction b, SeparationMetric metric);

}  // namespace starspike
