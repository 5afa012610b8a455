// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tsbench/schema.hpp"
#include "tsbench/timestamp.hpp"
#include "tsbench/value.hpp"

namespace tsbench {

// One row of one device: a timestamp plus one value per sensor in s_0..s_{m-1}
// order.
struct Record {
  int device = 0;
  std::int64_t timestamp = 0;
  std::vector<Value> values;
};

// One ingestion request: batch_size records, all of one device unless
// IS_MUL_DEV_BATCH interleaves the client's devices.
struct Batch {
  int epoch = 0;
  std::vector<Record> records;
};

// BATCH_SIZE * EPOCH * SENSOR_NUMBER * DEVICE_NUMBER, overflow-checked.
std::uint64_t total_points(const Config& cfg);

std::uint64_t points_per_batch(const Config& cfg);

// The batch stream of one client: epoch-major over the client's devices.
// Deterministic given (cfg, devices, position); workers and the serial dump
// replay produce identical streams.
class ClientWorkload {
 public:
  ClientWorkload(const Config& cfg, const Schema& schema, std::vector<int> devices);

  bool done() const;
  Batch next_batch();

  int batches_total() const { return batches_total_; }

 private:
  Record make_record(int device);

  Config cfg_;
  Schema schema_;
  std::vector<int> devices_;
  std::vector<TimestampGenerator> generators_;
  int epoch_ = 0;
  int batch_in_epoch_ = 0;
  std::size_t round_robin_ = 0;
  int batches_total_ = 0;
};

// Newline-delimited "device,timestamp,v0,...,vm" for the whole run, clients in
// order. Serial replay of the per-client streams; byte-identical across runs
// with the same config.
void dump_workload(const Config& cfg, const Schema& schema, std::ostream& out);

}  // namespace tsbench
