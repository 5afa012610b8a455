// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/schema.hpp"

#include <algorithm>
#include <numeric>

#include "tsbench/rng.hpp"

namespace tsbench {

namespace {

constexpr std::uint64_t kKindShuffleTag = 0x6b696e6473;   // kind-to-sensor placement
constexpr std::uint64_t kSensorParamTag = 0x706172616d;   // per-sensor waveform parameters
constexpr std::uint64_t kSensorNoiseTag = 0x7369676d61;   // per-sensor value stream

SensorFunction make_function(Waveform kind, const Config& cfg, int device, int sensor) {
  Rng rng(stream_seed(cfg.seed, kSensorParamTag, static_cast<std::uint64_t>(device),
                      static_cast<std::uint64_t>(sensor)));
  SensorFunction f;
  f.kind = kind;
  f.stream_seed = stream_seed(cfg.seed, kSensorNoiseTag, static_cast<std::uint64_t>(device),
                              static_cast<std::uint64_t>(sensor));
  switch (kind) {
    case Waveform::kSquare:
      f.period_ms = cfg.point_step_ms * rng.range(10, 100);
      f.low = rng.uniform01() * 50.0;
      f.high = f.low + 10.0 + rng.uniform01() * (90.0 - f.low);
      f.noise_sigma = rng.uniform01() * 5.0;
      break;
    case Waveform::kSine:
      f.period_ms = cfg.point_step_ms * rng.range(10, 100);
      f.offset = 20.0 + rng.uniform01() * 60.0;
      f.amplitude = 5.0 + rng.uniform01() * (std::min(f.offset, 100.0 - f.offset) - 5.0);
      f.phase = rng.uniform01() * 6.283185307179586;
      f.noise_sigma = rng.uniform01() * 5.0;
      break;
    case Waveform::kSawtooth:
      f.period_ms = cfg.point_step_ms * rng.range(10, 100);
      f.low = rng.uniform01() * 50.0;
      f.high = f.low + 10.0 + rng.uniform01() * (90.0 - f.low);
      f.noise_sigma = rng.uniform01() * 5.0;
      break;
    case Waveform::kRandomRange:
      f.low = rng.uniform01() * 50.0;
      f.high = f.low + 10.0 + rng.uniform01() * (90.0 - f.low);
      break;
    case Waveform::kConstant:
      f.value = rng.uniform01() * 100.0;
      break;
  }
  return f;
}

}  // namespace

std::array<int, 5> apportion_kinds(const std::array<int, 5>& ratio, int n) {
  const long long total = std::accumulate(ratio.begin(), ratio.end(), 0LL);
  std::array<int, 5> counts{};
  // Largest-remainder apportionment; ties broken toward the lower kind index.
  std::array<std::pair<long long, int>, 5> remainders{};
  int assigned = 0;
  for (int k = 0; k < 5; ++k) {
    const long long num = static_cast<long long>(ratio[k]) * n;
    counts[k] = static_cast<int>(num / total);
    remainders[k] = {num % total, k};
    assigned += counts[k];
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < n - assigned; ++i) counts[remainders[i].second]++;
  return counts;
}

std::vector<SensorFunction> assign_distributions(const Config& cfg) {
  const int n = cfg.device_number * cfg.sensor_number;
  const auto counts = apportion_kinds(cfg.distribution_ratio, n);

  std::vector<Waveform> kinds;
  kinds.reserve(n);
  const Waveform order[5] = {Waveform::kSquare, Waveform::kSine, Waveform::kSawtooth,
                             Waveform::kRandomRange, Waveform::kConstant};
  for (int k = 0; k < 5; ++k) kinds.insert(kinds.end(), counts[k], order[k]);

  Rng shuffle_rng(stream_seed(cfg.seed, kKindShuffleTag));
  shuffle_rng.shuffle(std::span<Waveform>(kinds));

  std::vector<SensorFunction> functions;
  functions.reserve(n);
  for (int d = 0; d < cfg.device_number; ++d) {
    for (int s = 0; s < cfg.sensor_number; ++s) {
      functions.push_back(make_function(kinds[d * cfg.sensor_number + s], cfg, d, s));
    }
  }
  return functions;
}

Schema derive_schema(const Config& cfg) {
  Schema schema;
  schema.sensor_count = cfg.sensor_number;
  schema.groups.reserve(cfg.group_number);
  for (int g = 0; g < cfg.group_number; ++g) schema.groups.push_back("group_" + std::to_string(g));

  // Contiguous equal blocks of ceil(D/G) devices; the remainder shrinks the
  // trailing groups.
  const int block = (cfg.device_number + cfg.group_number - 1) / cfg.group_number;
  schema.devices.reserve(cfg.device_number);
  schema.device_group.reserve(cfg.device_number);
  for (int d = 0; d < cfg.device_number; ++d) {
    schema.devices.push_back("d_" + std::to_string(d));
    schema.device_group.push_back(d / block);
  }

  schema.sensors.reserve(cfg.sensor_number);
  for (int s = 0; s < cfg.sensor_number; ++s) schema.sensors.push_back("s_" + std::to_string(s));

  schema.functions = assign_distributions(cfg);
  return schema;
}

std::vector<std::vector<int>> partition_devices(const Config& cfg) {
  std::vector<std::vector<int>> partition(cfg.client_number);
  const int base = cfg.device_number / cfg.client_number;
  const int extra = cfg.device_number % cfg.client_number;
  int next = 0;
  for (int c = 0; c < cfg.client_number; ++c) {
    const int size = base + (c < extra ? 1 : 0);
    partition[c].reserve(size);
    for (int i = 0; i < size; ++i) partition[c].push_back(next++);
  }
  return partition;
}

}  // namespace tsbench
