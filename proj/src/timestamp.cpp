// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/timestamp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsbench {

namespace {

constexpr std::uint64_t kTimestampTag = 0x74696d65;  // per-device draw stream
constexpr std::uint64_t kJitterTag = 0x6a697474;     // per-device interval jitter

std::uint32_t poisson_inversion(double lambda, Rng& rng) {
  const double u = rng.uniform01();
  double p = std::exp(-lambda);
  double cdf = p;
  std::uint32_t k = 0;
  while (u > cdf) {
    ++k;
    p *= lambda / k;
    cdf += p;
    if (p <= 0.0) break;  // underflow guard far in the tail
  }
  return k;
}

// Hormann's PTRS transformed rejection, exact pmf for large lambda.
std::uint32_t poisson_ptrs(double lambda, Rng& rng) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint32_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * loglam - lambda - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint32_t>(kf);
    }
  }
}

}  // namespace

std::uint32_t sample_poisson(double lambda, Rng& rng) {
  if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
  return lambda <= 30.0 ? poisson_inversion(lambda, rng) : poisson_ptrs(lambda, rng);
}

void permute(std::span<std::int64_t> timestamps, Rng& rng) {
  rng.shuffle(timestamps);
}

std::vector<bool> out_of_order_flags(std::span<const std::int64_t> timestamps) {
  std::vector<bool> flags(timestamps.size(), false);
  std::int64_t running_max = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    flags[i] = timestamps[i] < running_max;
    running_max = std::max(running_max, timestamps[i]);
  }
  return flags;
}

double out_of_order_ratio(std::span<const std::int64_t> timestamps) {
  if (timestamps.empty()) return 0.0;
  const auto flags = out_of_order_flags(timestamps);
  const auto late = std::count(flags.begin(), flags.end(), true);
  return static_cast<double>(late) / static_cast<double>(timestamps.size());
}

TimestampGenerator::TimestampGenerator(const Config& cfg, int device_index)
    : mode_(cfg.timestamp_gen_mode),
      step_(cfg.point_step_ms),
      batch_size_(cfg.batch_size),
      total_(static_cast<std::int64_t>(cfg.batch_size) * cfg.epoch),
      random_interval_(cfg.is_random_interval),
      p_(cfg.ooo_ratio),
      lambda_(cfg.lambda),
      jitter_seed_(stream_seed(cfg.seed, kJitterTag, static_cast<std::uint64_t>(device_index))),
      draw_stream_(stream_seed(cfg.seed, kTimestampTag, static_cast<std::uint64_t>(device_index))) {
  if (mode_ == TimestampMode::kGlobalOutOfOrder) {
    // The whole device timeline is permuted before batching.
    buffer_.reserve(total_);
    for (std::int64_t i = 0; i < total_; ++i) buffer_.push_back(next_in_order());
    permute(std::span<std::int64_t>(buffer_), draw_stream_);
  }
}

std::int64_t TimestampGenerator::next_in_order() {
  const std::int64_t index = counter_++;
  if (!random_interval_) return index * step_;
  if (index == 0) {
    last_base_ = 0;
    return 0;
  }
  // Interval noise: each gap is POINT_STEP plus uniform [0, POINT_STEP/2).
  const std::int64_t jitter = static_cast<std::int64_t>(
      hash01(jitter_seed_, static_cast<std::uint64_t>(index)) * (static_cast<double>(step_) / 2.0));
  last_base_ += step_ + jitter;
  return last_base_;
}

std::int64_t TimestampGenerator::next_batch_local() {
  if (buffer_pos_ >= buffer_.size()) {
    buffer_.clear();
    buffer_pos_ = 0;
    for (int i = 0; i < batch_size_; ++i) buffer_.push_back(next_in_order());
    permute(std::span<std::int64_t>(buffer_), draw_stream_);
  }
  return buffer_[buffer_pos_++];
}

std::int64_t TimestampGenerator::next_global() {
  if (buffer_pos_ >= buffer_.size()) throw std::logic_error("timestamp stream exhausted");
  return buffer_[buffer_pos_++];
}

std::int64_t TimestampGenerator::next_poisson() {
  // First draw anchors the stream: CMT grid starts at POINT_STEP. Afterwards
  // an out-of-order draw (probability P) rewinds by POINT_STEP*(X+1) without
  // touching CMT; an in-order draw advances CMT one step.
  if (first_) {
    first_ = false;
    cmt_ += step_;
    return cmt_;
  }
  if (draw_stream_.uniform01() < p_) {
    const auto x = sample_poisson(lambda_, draw_stream_);
    const std::int64_t delta = step_ * (static_cast<std::int64_t>(x) + 1);
    return std::max<std::int64_t>(cmt_ - delta, 0);
  }
  cmt_ += step_;
  return cmt_;
}

std::int64_t TimestampGenerator::next() {
  ++emitted_;
  switch (mode_) {
    case TimestampMode::kInOrder: {
      const auto t = next_in_order();
      cmt_ = std::max(cmt_, t);
      return t;
    }
    case TimestampMode::kBatchLocalOutOfOrder: {
      const auto t = next_batch_local();
      cmt_ = std::max(cmt_, t);
      return t;
    }
    case TimestampMode::kGlobalOutOfOrder: {
      const auto t = next_global();
      cmt_ = std::max(cmt_, t);
      return t;
    }
    case TimestampMode::kPoissonOutOfOrder:
      return next_poisson();
  }
  throw std::logic_error("unreachable");
}

}  // namespace tsbench
