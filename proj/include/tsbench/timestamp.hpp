// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsbench/config.hpp"
#include "tsbench/rng.hpp"

namespace tsbench {

// Poisson(lambda) sample from a sequential stream. Inversion by sequential
// search for lambda <= 30, Hormann's PTRS transformed rejection above.
std::uint32_t sample_poisson(double lambda, Rng& rng);

// Seeded uniform (Fisher-Yates) permutation in place.
void permute(std::span<std::int64_t> timestamps, Rng& rng);

// flags[i] is true iff t[i] < max{t[j] | j <= i}: the arrived-late test used to
// measure the realized out-of-order ratio.
std::vector<bool> out_of_order_flags(std::span<const std::int64_t> timestamps);

double out_of_order_ratio(std::span<const std::int64_t> timestamps);

// Timestamp stream of one device under the configured generation mode.
// Exactly one owner at a time; states are movable between threads but never
// shared. Valid for batch_size * epoch calls (mode 2 enforces the bound).
class TimestampGenerator {
 public:
  TimestampGenerator(const Config& cfg, int device_index);

  std::int64_t next();

  // Largest timestamp emitted so far on this stream (mode 3 state).
  std::int64_t cmt() const { return cmt_; }
  std::int64_t emitted() const { return emitted_; }

 private:
  std::int64_t next_in_order();
  std::int64_t next_batch_local();
  std::int64_t next_global();
  std::int64_t next_poisson();

  TimestampMode mode_;
  std::int64_t step_;
  int batch_size_;
  std::int64_t total_;
  bool random_interval_;
  double p_;
  double lambda_;

  std::int64_t emitted_ = 0;
  std::int64_t counter_ = 0;       // base-grid index
  std::int64_t last_base_ = 0;     // cumulative-jitter base timeline
  std::uint64_t jitter_seed_ = 0;
  Rng draw_stream_;                // permutations / Poisson branch draws
  std::vector<std::int64_t> buffer_;  // mode 1 batch, mode 2 full timeline
  std::size_t buffer_pos_ = 0;
  bool first_ = true;              // mode 3: first draw is in-order
  std::int64_t cmt_ = 0;
};

}  // namespace tsbench
