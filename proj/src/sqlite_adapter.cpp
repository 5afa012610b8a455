// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/sqlite_adapter.hpp"

#include <sqlite3.h>

#include <chrono>
#include <filesystem>

#include "tsbench/sql_text.hpp"

namespace tsbench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

[[noreturn]] void raise(sqlite3* db, const std::string& what) {
  throw AdapterError(what + ": " + sqlite3_errmsg(db));
}

}  // namespace

SqliteBackend::SqliteBackend(const std::string& path)
    : path_(path.empty() ? ":memory:" : path) {
  // Serialized mode: the handle is shared by all client workers.
  const int flags = SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX;
  if (sqlite3_open_v2(path_.c_str(), &db_, flags, nullptr) != SQLITE_OK) {
    const std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    if (db_) sqlite3_close(db_);
    throw AdapterError("cannot open sqlite database '" + path_ + "': " + msg);
  }
  sqlite3_busy_timeout(db_, 10000);
}

SqliteBackend::~SqliteBackend() {
  if (db_) sqlite3_close(db_);
}

bool SqliteBackend::in_memory() const { return path_ == ":memory:"; }

SqliteAdapter::SqliteAdapter(std::shared_ptr<SqliteBackend> backend, const Config& cfg)
    : backend_(std::move(backend)), cfg_(cfg) {}

double SqliteAdapter::exec(const std::string& sql) {
  const auto t0 = Clock::now();
  char* err = nullptr;
  if (sqlite3_exec(backend_->handle(), sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown sqlite error";
    sqlite3_free(err);
    throw AdapterError("sqlite exec failed: " + msg);
  }
  return ms_since(t0);
}

void SqliteAdapter::init_schema(const Schema& schema) {
  schema_ = schema;
  exec(sql_ddl(cfg_));
}

void SqliteAdapter::cleanup() { exec("DROP TABLE IF EXISTS data"); }

double SqliteAdapter::insert_batch(const Batch& batch) {
  return exec(render_insert_sql(batch, schema_, cfg_.data_type));
}

std::pair<RowSet, double> SqliteAdapter::execute_query(const QueryDescriptor& q) {
  const std::string sql = render_query_sql(q, schema_);
  const auto t0 = Clock::now();

  sqlite3_stmt* stmt = nullptr;
  if (sqlite3_prepare_v2(backend_->handle(), sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK)
    raise(backend_->handle(), "sqlite prepare failed");

  const int ncol = sqlite3_column_count(stmt);
  const bool agg = q.agg.has_value();
  const bool bucketed = q.qtype == 10;

  // Raw queries: time, device, s_a...; aggregates: device [, bucket], labels...
  const int time_col = agg ? (bucketed ? 1 : -1) : 0;
  const int device_col = agg ? 0 : 1;
  const int first_value_col = agg ? (bucketed ? 2 : 1) : 2;

  RowSet rows;
  int rc;
  while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
    const std::string device =
        reinterpret_cast<const char*>(sqlite3_column_text(stmt, device_col));
    const std::int64_t ts = time_col >= 0 ? sqlite3_column_int64(stmt, time_col) : 0;
    for (int c = first_value_col; c < ncol; ++c) {
      const int ctype = sqlite3_column_type(stmt, c);
      if (ctype == SQLITE_NULL) continue;
      Value v;
      if (ctype == SQLITE_INTEGER) v = static_cast<std::int64_t>(sqlite3_column_int64(stmt, c));
      else if (ctype == SQLITE_FLOAT) v = sqlite3_column_double(stmt, c);
      else v = std::string(reinterpret_cast<const char*>(sqlite3_column_text(stmt, c)));
      rows.push_back({device, sqlite3_column_name(stmt, c), ts, std::move(v)});
    }
  }
  if (rc != SQLITE_DONE) {
    sqlite3_finalize(stmt);
    raise(backend_->handle(), "sqlite step failed");
  }
  sqlite3_finalize(stmt);
  return {std::move(rows), ms_since(t0)};
}

std::optional<std::uint64_t> SqliteAdapter::used_space() {
  if (backend_->in_memory()) return std::nullopt;
  std::uint64_t bytes = 0;
  for (const char* suffix : {"", "-wal", "-shm", "-journal"}) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(backend_->path() + suffix, ec);
    if (!ec) bytes += size;
  }
  return bytes;
}

}  // namespace tsbench
