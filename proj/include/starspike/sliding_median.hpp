#pragma once

#include <optional>
#include <set>

#include "starspike/error.hpp"

namespace starspike {

// Order-statistics window for the moving-median baseline: two balanced
// multisets, low half (<= median) and high half. Insert/erase are O(log n);
// median() reads the boundary elements. Even counts average the two middle
// order statistics, matching the interpolated-quantile convention.
class SlidingMedian {
 public:
  void insert(double x) {
    if (low_.empty() || x <= *low_.rbegin())
      low_.insert(x);
    else
      high_.insert(x);
    rebalance();
  }

  void erase(double x) {
    auto it = low_.find(x);
    if (it != low_.end()) {
      low_.erase(it);
    } else {
      it = high_.find(x);
      if (it == high_.end()) invariant_failure("SlidingMedian erase miss");
      high_.erase(it);
    }
    rebalance();
  }

  size_t size() const { return low_.size() + high_.size(); }

  std::optional<double> median() const {
    if (low_.empty()) return std::nullopt;
    if (low_.size() > high_.size()) return *low_.rbegin();
    return 0.5 * (*low_.rbegin() + *high_.begin());
  }

 private:
  void rebalance() {
    while (low_.size() > high_.size() + 1) {
      auto it = std::prev(low_.end());
      high_.insert(*it);
      low_.erase(it);
    }
    while (high_.size() > low_.size()) {
      auto it = high_.begin();
      low_.insert(*it);
      high_.erase(it);
    }
  }

  std::multiset<double> low_;   // max side
  std::multiset<double> high_;  // min side
};

}  // namespace starspike
