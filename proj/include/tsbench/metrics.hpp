// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace tsbench {

// Cost-time summary in milliseconds. Percentiles are nearest-rank
// (rank = ceil(p/100 * n) on the sorted list); middle_average is the mean
// after dropping the floor(0.05 n) smallest and largest samples.
struct LatencyStats {
  std::size_t n = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double middle_average = 0.0;
  double p1 = 0.0;
  double p5 = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
};

// Throws std::invalid_argument on empty input.
LatencyStats summarize(std::span<const double> samples_ms);

// Nearest-rank percentile of a sorted ascending list; p in [1, 100].
double percentile_sorted(std::span<const double> sorted, int p);

// total_points / max(per-client accumulated cost), in points per second.
// Throws std::invalid_argument when the maximum accumulation is not positive.
double throughput(std::span<const double> per_client_cost_ms, std::uint64_t total_points);

// Max growth of used bytes over the baseline (first sample), floored at 0.
// Empty input -> nullopt (space metric unsupported).
std::optional<std::uint64_t> space_consumption(std::span<const std::uint64_t> used_bytes);

}  // namespace tsbench
