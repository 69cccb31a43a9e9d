#pragma once

#include <future>
#include <vector>

#include "starspike/direction.hpp"

namespace starspike {

// Runs f(channel_index) for all 8 channels concurrently. Channel-wise
// operations in this codebase are pure, so results are deterministic.
// Exceptions propagate; remaining tasks are joined first.
template <typename F>
void parallel_channels(F&& f) {
  std::vector<std::future<void>> futures;
  futures.reserve(kNumDirections);
  for (int c = 0; c < kNumDirections; ++c)
    futures.push_back(std::async(std::launch::async, [&f, c] { f(c); }));
  for (auto& fut : futures) fut.get();
}

}  // namespace starspike
