// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tsbench/rng.hpp"

namespace tsbench {

namespace {

constexpr std::uint64_t kNoiseTag = 0x6e6f697365;  // substream separating noise draws

bool periodic(Waveform k) {
  return k == Waveform::kSquare || k == Waveform::kSine || k == Waveform::kSawtooth;
}

}  // namespace

double gaussian_noise(std::uint64_t seed, std::int64_t t_ms, double sigma) {
  if (sigma == 0.0) return 0.0;
  const auto t = static_cast<std::uint64_t>(t_ms);
  // u1 in (0,1] keeps the log finite; u2 in [0,1).
  const double u1 =
      static_cast<double>((hash_bits(seed, t, 1) >> 11) + 1) * 0x1.0p-53;
  const double u2 = hash01(seed, t, 2);
  return sigma * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double value_at(const SensorFunction& f, std::int64_t t_ms) {
  if (t_ms < 0) throw std::domain_error("timestamp must be non-negative");
  double base = 0.0;
  switch (f.kind) {
    case Waveform::kSquare: {
      const std::int64_t pos = t_ms % f.period_ms;
      base = (2 * pos < f.period_ms) ? f.high : f.low;
      break;
    }
    case Waveform::kSine: {
      // t mod T keeps base(t + kT) == base(t) exact in floating point.
      const double frac = static_cast<double>(t_ms % f.period_ms) / static_cast<double>(f.period_ms);
      base = f.offset + f.amplitude * std::sin(f.phase + 2.0 * std::numbers::pi * frac);
      break;
    }
    case Waveform::kSawtooth: {
      const double frac = static_cast<double>(t_ms % f.period_ms) / static_cast<double>(f.period_ms);
      base = f.low + (f.high - f.low) * frac;
      break;
    }
    case Waveform::kRandomRange:
      base = f.low + hash01(f.stream_seed, static_cast<std::uint64_t>(t_ms)) * (f.high - f.low);
      break;
    case Waveform::kConstant:
      base = f.value;
      break;
  }
  if (periodic(f.kind) && f.noise_sigma > 0.0) {
    base += gaussian_noise(stream_seed(f.stream_seed, kNoiseTag), t_ms, f.noise_sigma);
  }
  return base;
}

}  // namespace tsbench
