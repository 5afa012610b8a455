// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/workload.hpp"

#include <ostream>
#include <stdexcept>

namespace tsbench {

std::uint64_t points_per_batch(const Config& cfg) {
  return static_cast<std::uint64_t>(cfg.batch_size) * cfg.sensor_number;
}

std::uint64_t total_points(const Config& cfg) {
  std::uint64_t out = cfg.batch_size;
  for (std::uint64_t factor :
       {static_cast<std::uint64_t>(cfg.epoch), static_cast<std::uint64_t>(cfg.sensor_number),
        static_cast<std::uint64_t>(cfg.device_number)}) {
    if (factor != 0 && out > UINT64_MAX / factor)
      throw std::overflow_error("total point count overflows 64 bits");
    out *= factor;
  }
  return out;
}

ClientWorkload::ClientWorkload(const Config& cfg, const Schema& schema, std::vector<int> devices)
    : cfg_(cfg), schema_(schema), devices_(std::move(devices)) {
  generators_.reserve(devices_.size());
  for (int d : devices_) generators_.emplace_back(cfg_, d);
  batches_total_ = static_cast<int>(devices_.size()) * cfg_.epoch;
}

bool ClientWorkload::done() const { return epoch_ >= cfg_.epoch || devices_.empty(); }

Record ClientWorkload::make_record(int slot) {
  Record r;
  r.device = devices_[slot];
  r.timestamp = generators_[slot].next();
  r.values.reserve(cfg_.sensor_number);
  for (int s = 0; s < cfg_.sensor_number; ++s) {
    const double raw = value_at(schema_.function_of(r.device, s), r.timestamp);
    r.values.push_back(value_for(raw, cfg_.data_type));
  }
  return r;
}

Batch ClientWorkload::next_batch() {
  if (done()) throw std::out_of_range("epoch out of range");
  Batch batch;
  batch.epoch = epoch_;
  batch.records.reserve(cfg_.batch_size);
  if (cfg_.is_mul_dev_batch) {
    // Round-robin over this client's devices; the cursor survives batch
    // boundaries so each device contributes batch_size records per epoch.
    for (int k = 0; k < cfg_.batch_size; ++k) {
      batch.records.push_back(make_record(static_cast<int>(round_robin_)));
      round_robin_ = (round_robin_ + 1) % devices_.size();
    }
  } else {
    for (int k = 0; k < cfg_.batch_size; ++k) {
      batch.records.push_back(make_record(batch_in_epoch_));
    }
  }
  if (++batch_in_epoch_ == static_cast<int>(devices_.size())) {
    batch_in_epoch_ = 0;
    ++epoch_;
  }
  return batch;
}

void dump_workload(const Config& cfg, const Schema& schema, std::ostream& out) {
  for (const auto& devices : partition_devices(cfg)) {
    ClientWorkload workload(cfg, schema, devices);
    while (!workload.done()) {
      const Batch batch = workload.next_batch();
      for (const auto& r : batch.records) {
        out << schema.devices[r.device] << ',' << r.timestamp;
        for (const auto& v : r.values) out << ',' << format_value(v, cfg.data_type);
        out << '\n';
      }
    }
  }
}

}  // namespace tsbench
