// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <memory>
#include <string>

#include "tsbench/adapter.hpp"

struct sqlite3;

namespace tsbench {

// Shared serialized-mode connection; adapter instances hand statements to it.
class SqliteBackend {
 public:
  explicit SqliteBackend(const std::string& path);  // empty -> ":memory:"
  ~SqliteBackend();

  SqliteBackend(const SqliteBackend&) = delete;
  SqliteBackend& operator=(const SqliteBackend&) = delete;

  sqlite3* handle() { return db_; }
  const std::string& path() const { return path_; }
  bool in_memory() const;

 private:
  std::string path_;
  sqlite3* db_ = nullptr;
};

// Relational TSDB adapter: renders the canonical SQL text and executes it on
// SQLite. Wide rows are normalized to per-sensor result rows.
class SqliteAdapter : public Adapter {
 public:
  SqliteAdapter(std::shared_ptr<SqliteBackend> backend, const Config& cfg);

  void init_schema(const Schema& schema) override;
  void cleanup() override;
  double insert_batch(const Batch& batch) override;
  std::pair<RowSet, double> execute_query(const QueryDescriptor& q) override;
  std::optional<std::uint64_t> used_space() override;
  void close() override {}

 private:
  double exec(const std::string& sql);  // returns cost ms

  std::shared_ptr<SqliteBackend> backend_;
  Config cfg_;
  Schema schema_;
};

}  // namespace tsbench
