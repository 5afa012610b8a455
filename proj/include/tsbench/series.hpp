// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>

namespace tsbench {

enum class Waveform { kSquare, kSine, kSawtooth, kRandomRange, kConstant };

// Deterministic value function f(t) of one sensor. Field roles by kind:
//   kSquare:       period_ms, low/high levels
//   kSine:         period_ms, offset, amplitude, phase
//   kSawtooth:     period_ms, low/high = ramp min/max over one period
//   kRandomRange:  low/high = uniform range [low, high)
//   kConstant:     value
// noise_sigma applies to the three periodic kinds only.
struct SensorFunction {
  Waveform kind = Waveform::kConstant;
  std::int64_t period_ms = 0;
  double low = 0.0;
  double high = 0.0;
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double value = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t stream_seed = 0;

  bool operator==(const SensorFunction&) const = default;
};

// f(t) plus noise. Deterministic in (f, t); the noise term is a function of
// (stream_seed, t), never of call order. Throws std::domain_error for t < 0.
double value_at(const SensorFunction& f, std::int64_t t_ms);

// Mean-0, stddev-sigma Gaussian sample, a pure function of (stream_seed, t).
// sigma == 0 returns exactly 0. Box-Muller over counter-based uniforms.
double gaussian_noise(std::uint64_t stream_seed, std::int64_t t_ms, double sigma);

}  // namespace tsbench
