#include "starspike/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "starspike/error.hpp"
#include "starspike/kernels.hpp"
#include "starspike/robust.hpp"

namespace starspike {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

bool CorrelationMatrix::defined(int i, int j) const {
  return std::isfinite(values[static_cast<size_t>(i)][static_cast<size_t>(j)]);
}

CorrelationMatrix correlation_matrix(const NormalisedChannels& norm) {
  CorrelationMatrix m;
  m.excluded = norm.excluded;
  for (auto& row : m.values) row.fill(kNaN);

  int usable = 0;
  for (int i = 0; i < kNumDirections; ++i)
    if (norm.channel_usable(i)) ++usable;
  if (usable < 2) throw InputError("insufficient joint coverage");

  for (int i = 0; i < kNumDirections; ++i) {
    if (!norm.channel_usable(i)) continue;
    m.values[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    m.n_overlap[static_cast<size_t>(i)][static_cast<size_t>(i)] =
        static_cast<long long>(
            std::count(norm.valid[static_cast<size_t>(i)].begin(),
                       norm.valid[static_cast<size_t>(i)].end(), uint8_t{1}));
  }

  bool any_pair = false;
  for (int i = 0; i < kNumDirections; ++i) {
    for (int j = i + 1; j < kNumDirections; ++j) {
      if (!norm.channel_usable(i) || !norm.channel_usable(j)) continue;
      const auto pm = kernels::masked_pair_moments(
          norm.values[static_cast<size_t>(i)], norm.values[static_cast<size_t>(j)],
          norm.valid[static_cast<size_t>(i)], norm.valid[static_cast<size_t>(j)]);
      m.n_overlap[static_cast<size_t>(i)][static_cast<size_t>(j)] = pm.n;
      m.n_overlap[static_cast<size_t>(j)][static_cast<size_t>(i)] = pm.n;
      if (pm.n < kMinPairOverlap) continue;
      const double n = static_cast<double>(pm.n);
      const double cov = pm.sum_xy / n - (pm.sum_x / n) * (pm.sum_y / n);
      const double var_x =
          std::max(0.0, pm.sum_xx / n - (pm.sum_x / n) * (pm.sum_x / n));
      const double var_y =
          std::max(0.0, pm.sum_yy / n - (pm.sum_y / n) * (pm.sum_y / n));
      if (var_x <= 0.0 || var_y <= 0.0) continue;
      double r = cov / std::sqrt(var_x * var_y);
      if (std::fabs(r) > 1.0 + 1e-12)
        invariant_failure("correlation out of range: " + std::to_string(r));
      r = std::clamp(r, -1.0, 1.0);
      m.values[static_cast<size_t>(i)][static_cast<size_t>(j)] = r;
      m.values[static_cast<size_t>(j)][static_cast<size_t>(i)] = r;
      any_pair = true;
    }
  }
  if (!any_pair) throw InputError("insufficient joint coverage");
  return m;
}

SeparationDecay separation_decay(const CorrelationMatrix& m,
                                 SeparationMetric metric) {
  SeparationDecay decay;
  decay.metric = metric;
  const int max_sep = metric == SeparationMetric::linear ? kNumDirections - 1
                                                         : kNumDirections / 2;
  for (int s = 1; s <= max_sep; ++s) {
    std::vector<double> rs;
    for (int i = 0; i < kNumDirections; ++i)
      for (int j = i + 1; j < kNumDirections; ++j)
        if (separation(Direction{i}, Direction{j}, metric) == s && m.defined(i, j))
          rs.push_back(m.values[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    if (rs.empty()) continue;
    SeparationDecay::Bin bin;
    bin.separation = s;
    bin.n_pairs = static_cast<int>(rs.size());
    bin.mean_r = mean(rs);
    bin.sd_r = std::sqrt(variance_population(rs));
    decay.bins.push_back(bin);
  }
  return decay;
}

}  // namespace starspike
