// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/influx_adapter.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "httplib.h"
#include "nlohmann/json.hpp"
#include "tsbench/line_protocol.hpp"

namespace tsbench {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string measurements(const QueryDescriptor& q, const Schema& schema) {
  std::set<int> groups;
  for (int d : q.devices) groups.insert(schema.group_of(d));
  std::string out;
  for (int g : groups) {
    if (!out.empty()) out += ", ";
    out += schema.groups[g];
  }
  return out;
}

std::string device_predicate(const QueryDescriptor& q, const Schema& schema) {
  std::string out = "(";
  for (std::size_t i = 0; i < q.devices.size(); ++i) {
    if (i) out += " OR ";
    out += "device = '" + schema.devices[q.devices[i]] + "'";
  }
  out += ")";
  return out;
}

std::string raw_fields(const QueryDescriptor& q, const Schema& schema) {
  std::string out = "device";
  for (int s : q.sensors) out += ", " + schema.sensors[s];
  return out;
}

std::string agg_fields(const QueryDescriptor& q, const Schema& schema) {
  const std::string fn = to_string(*q.agg);
  std::string out;
  for (std::size_t i = 0; i < q.sensors.size(); ++i) {
    if (i) out += ", ";
    const std::string& s = schema.sensors[q.sensors[i]];
    out += fn + "(" + s + ") AS \"" + fn + "(" + s + ")\"";
  }
  return out;
}

std::string value_predicate(const QueryDescriptor& q, const Schema& schema) {
  std::ostringstream out;
  out.precision(17);
  for (int s : q.sensors) {
    out << " AND " << schema.sensors[s] << " " << to_string(q.value_filter->op) << " "
        << q.value_filter->threshold;
  }
  return out.str();
}

std::string time_predicate(const QueryDescriptor& q) {
  return " AND time >= " + std::to_string(*q.start_ms) + "ms AND time < " +
         std::to_string(q.end_ms()) + "ms";
}

}  // namespace

std::string render_influxql(const QueryDescriptor& q, const Schema& schema) {
  std::ostringstream out;
  switch (q.qtype) {
    case 1:
      out << "SELECT " << raw_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << " AND time = " << *q.start_ms << "ms";
      break;
    case 2:
      out << "SELECT " << raw_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << time_predicate(q);
      break;
    case 3:
      out << "SELECT " << raw_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << " LIMIT " << *q.limit;
      break;
    case 4:
      out << "SELECT " << raw_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << time_predicate(q)
          << value_predicate(q, schema);
      break;
    case 5:
      out << "SELECT " << raw_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << time_predicate(q)
          << value_predicate(q, schema) << " LIMIT " << *q.limit;
      break;
    case 6:
      out << "SELECT " << agg_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << time_predicate(q)
          << " GROUP BY device";
      break;
    case 7:
      out << "SELECT " << agg_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << value_predicate(q, schema)
          << " GROUP BY device";
      break;
    case 8:
      out << "SELECT " << agg_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << time_predicate(q)
          << value_predicate(q, schema) << " GROUP BY device";
      break;
    case 9: {
      std::string fields;
      for (std::size_t i = 0; i < q.sensors.size(); ++i) {
        if (i) fields += ", ";
        const std::string& s = schema.sensors[q.sensors[i]];
        fields += "last(" + s + ") AS " + s;
      }
      out << "SELECT " << fields << " FROM " << measurements(q, schema) << " WHERE "
          << device_predicate(q, schema) << " GROUP BY device";
      break;
    }
    case 10:
      out << "SELECT " << agg_fields(q, schema) << " FROM " << measurements(q, schema)
          << " WHERE " << device_predicate(q, schema) << time_predicate(q)
          << " GROUP BY time(" << *q.interval_ms << "ms), device fill(none)";
      break;
    default:
      break;
  }
  return out.str();
}

RowSet parse_influx_response(const std::string& json_body, const QueryDescriptor& q) {
  const json doc = json::parse(json_body);
  RowSet rows;
  const bool agg = q.agg.has_value();
  const bool whole_range_agg = agg && q.qtype != 10;

  if (!doc.contains("results")) return rows;
  for (const auto& result : doc["results"]) {
    if (result.contains("error"))
      throw AdapterError("influxdb query error: " + result["error"].get<std::string>());
    if (!result.contains("series")) continue;
    for (const auto& series : result["series"]) {
      std::string tag_device;
      if (series.contains("tags") && series["tags"].contains("device"))
        tag_device = series["tags"]["device"].get<std::string>();
      const auto& columns = series["columns"];
      int device_col = -1;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == "device") device_col = static_cast<int>(c);
      }
      for (const auto& row : series["values"]) {
        std::string device = tag_device;
        if (device_col >= 0 && row[device_col].is_string())
          device = row[device_col].get<std::string>();
        const std::int64_t ts =
            whole_range_agg ? 0
                            : (row[0].is_number() ? row[0].get<std::int64_t>() : 0);
        for (std::size_t c = 1; c < row.size(); ++c) {
          if (static_cast<int>(c) == device_col) continue;
          const auto& cell = row[c];
          if (cell.is_null()) continue;
          Value v;
          if (cell.is_number_integer()) v = cell.get<std::int64_t>();
          else if (cell.is_number()) v = cell.get<double>();
          else v = cell.get<std::string>();
          rows.push_back({device, columns[c].get<std::string>(), ts, std::move(v)});
        }
      }
    }
  }

  // InfluxQL applies LIMIT per measurement; trim the merged rows to the global
  // first N records under (time, device) order.
  if (q.limit) {
    std::vector<std::pair<std::int64_t, std::string>> keys;
    for (const auto& r : rows) keys.emplace_back(r.timestamp, r.device);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (keys.size() > static_cast<std::size_t>(*q.limit)) {
      const auto cutoff = keys[*q.limit];
      std::erase_if(rows, [&](const ResultRow& r) {
        return std::pair<std::int64_t, std::string>{r.timestamp, r.device} >= cutoff;
      });
    }
  }
  return rows;
}

InfluxAdapter::InfluxAdapter(const std::string& url, std::string db, DataType data_type,
                             std::string auth_header)
    : client_(std::make_unique<httplib::Client>(url)),
      db_(std::move(db)),
      auth_header_(std::move(auth_header)),
      data_type_(data_type) {
  client_->set_connection_timeout(10, 0);
  client_->set_read_timeout(120, 0);
  if (!auth_header_.empty()) {
    client_->set_default_headers({{"Authorization", auth_header_}});
  }
}

InfluxAdapter::~InfluxAdapter() = default;

void InfluxAdapter::run_statement(const std::string& q) {
  httplib::Params params{{"q", q}};
  auto res = client_->Post("/query", params);
  if (!res) throw AdapterError("influxdb unreachable: " + httplib::to_string(res.error()));
  if (res->status >= 300)
    throw AdapterError("influxdb statement failed (" + std::to_string(res->status) + "): " + res->body);
}

void InfluxAdapter::init_schema(const Schema& schema) {
  schema_ = schema;
  run_statement("CREATE DATABASE \"" + db_ + "\"");
}

void InfluxAdapter::cleanup() {
  run_statement("DROP DATABASE \"" + db_ + "\"");
  run_statement("CREATE DATABASE \"" + db_ + "\"");
}

double InfluxAdapter::insert_batch(const Batch& batch) {
  const std::string body = encode_line_protocol(batch, schema_, data_type_);
  const auto t0 = Clock::now();
  auto res = client_->Post("/write?db=" + db_ + "&precision=ns", body, "text/plain");
  const double cost = ms_since(t0);
  if (!res) throw AdapterError("influxdb write failed: " + httplib::to_string(res.error()));
  if (res->status != 204 && res->status != 200)
    throw AdapterError("influxdb write rejected (" + std::to_string(res->status) + "): " + res->body);
  return cost;
}

std::pair<RowSet, double> InfluxAdapter::execute_query(const QueryDescriptor& q) {
  const std::string ql = render_influxql(q, schema_);
  const std::string path =
      "/query?db=" + db_ + "&epoch=ms&q=" + httplib::detail::encode_url(ql);
  const auto t0 = Clock::now();
  auto res = client_->Get(path);
  const double cost = ms_since(t0);
  if (!res) throw AdapterError("influxdb query failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw AdapterError("influxdb query rejected (" + std::to_string(res->status) + "): " + res->body);
  return {parse_influx_response(res->body, q), cost};
}

void InfluxAdapter::close() {}

}  // namespace tsbench
