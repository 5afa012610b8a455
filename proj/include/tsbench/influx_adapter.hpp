// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <memory>
#include <string>

#include "tsbench/adapter.hpp"

namespace httplib {
class Client;
}

namespace tsbench {

// InfluxQL text for one descriptor; measurements are the selected devices'
// groups, aggregates group by "device" (and time(<interval>ms) fill(none) for
// group-by-time queries).
std::string render_influxql(const QueryDescriptor& q, const Schema& schema);

// Normalizes an InfluxDB 1.x /query JSON response (epoch=ms) to result rows.
RowSet parse_influx_response(const std::string& json_body, const QueryDescriptor& q);

// InfluxDB-1.x-compatible HTTP adapter: POST /write?db=..&precision=ns with
// line protocol, GET /query?db=..&q=..&epoch=ms.
class InfluxAdapter : public Adapter {
 public:
  // url "http://host:port"; db is created by init_schema.
  InfluxAdapter(const std::string& url, std::string db, DataType data_type,
                std::string auth_header = "");
  ~InfluxAdapter() override;

  void init_schema(const Schema& schema) override;
  void cleanup() override;
  double insert_batch(const Batch& batch) override;
  std::pair<RowSet, double> execute_query(const QueryDescriptor& q) override;
  std::optional<std::uint64_t> used_space() override { return std::nullopt; }
  void close() override;

 private:
  void run_statement(const std::string& q);  // POST /query (DDL)

  std::unique_ptr<httplib::Client> client_;
  std::string db_;
  std::string auth_header_;
  Schema schema_;
  DataType data_type_ = DataType::kDouble;
};

}  // namespace tsbench
