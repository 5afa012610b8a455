// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "tsbench/adapter.hpp"

namespace tsbench {

// In-memory TSDB used as the correctness oracle: per-series ordered map
// timestamp -> value with last-write-wins on duplicate timestamps.
class ReferenceStore {
 public:
  void clear();
  void upsert(int device, int sensor, std::int64_t ts, Value v);
  std::uint64_t point_count() const;

  // Brute-force evaluation of all ten query semantics.
  RowSet execute(const QueryDescriptor& q, const Schema& schema) const;

 private:
  using Series = std::map<std::int64_t, Value>;
  mutable std::mutex mu_;
  std::map<std::pair<int, int>, Series> series_;

  RowSet execute_locked(const QueryDescriptor& q, const Schema& schema) const;
  const Series* find_series(int device, int sensor) const;
};

RowSet ref_execute_query(const ReferenceStore& store, const QueryDescriptor& q,
                         const Schema& schema);

class ReferenceAdapter : public Adapter {
 public:
  explicit ReferenceAdapter(std::shared_ptr<ReferenceStore> store)
      : store_(std::move(store)) {}

  void init_schema(const Schema& schema) override { schema_ = schema; }
  void cleanup() override { store_->clear(); }
  double insert_batch(const Batch& batch) override;
  std::pair<RowSet, double> execute_query(const QueryDescriptor& q) override;
  std::optional<std::uint64_t> used_space() override { return std::nullopt; }
  void close() override {}

 private:
  std::shared_ptr<ReferenceStore> store_;
  Schema schema_;
};

}  // namespace tsbench
