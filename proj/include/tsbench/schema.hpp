// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <string>
#include <vector>

#include "tsbench/config.hpp"
#include "tsbench/series.hpp"

namespace tsbench {

// Derived naming and series layout: groups "group_g", devices "d_j" split into
// contiguous equal blocks per group, sensors "s_0".."s_{m-1}" on every device,
// and one SensorFunction per (device, sensor).
struct Schema {
  std::vector<std::string> groups;
  std::vector<std::string> devices;
  std::vector<int> device_group;  // device index -> group index
  std::vector<std::string> sensors;
  int sensor_count = 0;
  std::vector<SensorFunction> functions;  // device * sensor_count + sensor

  const SensorFunction& function_of(int device, int sensor) const {
    return functions[static_cast<std::size_t>(device) * sensor_count + sensor];
  }
  int group_of(int device) const { return device_group[device]; }
};

Schema derive_schema(const Config& cfg);

// Contiguous balanced split of device indices across clients; client 0 gets
// the lowest-indexed devices and block sizes differ by at most one.
std::vector<std::vector<int>> partition_devices(const Config& cfg);

// Five-kind assignment with largest-remainder apportionment of
// distribution_ratio over all device_number * sensor_number sensors, plus
// per-sensor waveform parameters drawn from seeded streams.
std::vector<SensorFunction> assign_distributions(const Config& cfg);

// Exact kind counts produced by assign_distributions for n sensors.
std::array<int, 5> apportion_kinds(const std::array<int, 5>& ratio, int n);

}  // namespace tsbench
