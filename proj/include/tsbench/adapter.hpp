// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

#include "tsbench/query.hpp"
#include "tsbench/rows.hpp"
#include "tsbench/schema.hpp"
#include "tsbench/workload.hpp"

namespace tsbench {

class AdapterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// System-free database interface. Cost times are TTLB: measured inside the
// adapter from request send to the last byte of the response, in milliseconds.
// One instance per client worker; instances may share a backend but are never
// shared between threads themselves.
class Adapter {
 public:
  virtual ~Adapter() = default;

  virtual void init_schema(const Schema& schema) = 0;
  virtual void cleanup() = 0;
  virtual double insert_batch(const Batch& batch) = 0;
  virtual std::pair<RowSet, double> execute_query(const QueryDescriptor& q) = 0;
  virtual std::optional<std::uint64_t> used_space() = 0;
  virtual void close() = 0;
};

using AdapterFactory = std::function<std::unique_ptr<Adapter>()>;

// Factory for cfg.adapter ("reference", "sqlite", "influxdb"); all instances
// from one factory share the same backend store/connection target.
AdapterFactory make_adapter_factory(const Config& cfg);

}  // namespace tsbench
