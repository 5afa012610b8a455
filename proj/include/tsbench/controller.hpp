// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsbench/adapter.hpp"
#include "tsbench/metrics.hpp"
#include "tsbench/monitor.hpp"

namespace tsbench {

// One measured operation. op is "ingest" or "Q1".."Q10"; seq is the
// per-client issue index, so sorting by (client_id, seq) reproduces the
// deterministic issue order regardless of thread interleaving.
struct OperationRecord {
  int client_id = 0;
  std::string op;
  std::int64_t seq = 0;
  double start_wall_ms = 0.0;
  double cost_ms = 0.0;
  std::uint64_t points = 0;  // points written or rows returned
  bool success = true;
  std::string error;
};

struct TestResult {
  Config config;
  std::map<std::string, LatencyStats> stats;  // successful ops per kind
  std::optional<double> throughput_pps;       // ingestion runs
  std::uint64_t total_points = 0;             // successful points/rows
  std::uint64_t failures = 0;
  double wall_seconds = 0.0;
  std::vector<OperationRecord> operations;    // sorted by (client_id, seq)
  std::vector<MonitorSample> monitor_samples;
  std::optional<std::uint64_t> space_bytes;
};

struct ControllerOptions {
  bool do_cleanup = true;     // env init before ingestion (cleanup + schema)
  int progress_every = 0;     // stderr progress line per N ops; 0 = off
};

// CLIENT_NUMBER workers, each bound to its contiguous device partition,
// looping EPOCH epochs of insert_batch. Adapter connect failure throws
// AdapterError; individual op failures are recorded and the test continues.
TestResult run_ingestion_test(const Config& cfg, const AdapterFactory& factory,
                              const ControllerOptions& options = {});

// CLIENT_NUMBER workers, each issuing EPOCH queries from its seeded stream.
TestResult run_query_test(const Config& cfg, const AdapterFactory& factory,
                          const ControllerOptions& options = {});

}  // namespace tsbench
