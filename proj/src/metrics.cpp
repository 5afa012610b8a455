// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tsbench {

double percentile_sorted(std::span<const double> sorted, int p) {
  if (sorted.empty()) throw std::invalid_argument("no samples");
  // Nearest rank in exact integer arithmetic: rank = ceil(p*n/100).
  const std::size_t n = sorted.size();
  std::size_t rank = (static_cast<std::size_t>(p) * n + 99) / 100;
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

LatencyStats summarize(std::span<const double> samples_ms) {
  if (samples_ms.empty()) throw std::invalid_argument("cannot summarize zero samples");
  std::vector<double> sorted(samples_ms.begin(), samples_ms.end());
  std::sort(sorted.begin(), sorted.end());

  LatencyStats s;
  s.n = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);

  const std::size_t trim = s.n / 20;  // floor(0.05 n) from each end
  const auto kept = static_cast<double>(s.n - 2 * trim);
  s.middle_average =
      std::accumulate(sorted.begin() + trim, sorted.end() - trim, 0.0) / kept;

  s.p1 = percentile_sorted(sorted, 1);
  s.p5 = percentile_sorted(sorted, 5);
  s.p50 = percentile_sorted(sorted, 50);
  s.p90 = percentile_sorted(sorted, 90);
  s.p95 = percentile_sorted(sorted, 95);
  s.p99 = percentile_sorted(sorted, 99);
  return s;
}

double throughput(std::span<const double> per_client_cost_ms, std::uint64_t total_points) {
  if (per_client_cost_ms.empty()) throw std::invalid_argument("no client accumulations");
  const double max_ms = *std::max_element(per_client_cost_ms.begin(), per_client_cost_ms.end());
  if (max_ms <= 0.0) throw std::invalid_argument("total cost-time must be positive");
  return static_cast<double>(total_points) / max_ms * 1000.0;
}

std::optional<std::uint64_t> space_consumption(std::span<const std::uint64_t> used_bytes) {
  if (used_bytes.empty()) return std::nullopt;
  const std::uint64_t baseline = used_bytes.front();
  std::uint64_t growth = 0;
  for (std::uint64_t u : used_bytes) {
    if (u > baseline) growth = std::max(growth, u - baseline);
  }
  return growth;
}

}  // namespace tsbench
