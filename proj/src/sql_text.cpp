// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/sql_text.hpp"

#include <cstdio>
#include <sstream>

namespace tsbench {

namespace {

std::string sql_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

std::string column_type(DataType t) {
  switch (t) {
    case DataType::kFloat:
    case DataType::kDouble: return "DOUBLE PRECISION";
    case DataType::kInt32: return "INTEGER";
    case DataType::kInt64: return "BIGINT";
    case DataType::kText: return "TEXT";
  }
  return "DOUBLE PRECISION";
}

std::string value_literal(const Value& v, DataType type) {
  if (const auto* s = std::get_if<std::string>(&v)) return sql_quote(*s);
  // FLOAT values render at full double precision here so what the engine
  // stores is bit-identical to the generated value.
  if (std::holds_alternative<double>(v)) return format_value(v, DataType::kDouble);
  return format_value(v, type);
}

std::string device_in_list(const QueryDescriptor& q, const Schema& schema) {
  std::string out = "device IN (";
  for (std::size_t i = 0; i < q.devices.size(); ++i) {
    if (i) out += ",";
    out += sql_quote(schema.devices[q.devices[i]]);
  }
  out += ")";
  return out;
}

std::string sensor_list(const QueryDescriptor& q, const Schema& schema, const std::string& prefix = "") {
  std::string out;
  for (std::size_t i = 0; i < q.sensors.size(); ++i) {
    if (i) out += ", ";
    out += prefix + schema.sensors[q.sensors[i]];
  }
  return out;
}

std::string agg_list(const QueryDescriptor& q, const Schema& schema) {
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
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", q.value_filter->threshold);
  for (int sensor : q.sensors) {
    out += " AND " + schema.sensors[sensor] + " " + to_string(q.value_filter->op) + " " + buf;
  }
  return out;
}

std::string time_predicate(const QueryDescriptor& q) {
  return " AND time >= " + std::to_string(*q.start_ms) + " AND time < " +
         std::to_string(q.end_ms());
}

}  // namespace

std::string sql_ddl(const Config& cfg) {
  std::ostringstream out;
  out << "CREATE TABLE IF NOT EXISTS data (device TEXT NOT NULL, time BIGINT NOT NULL";
  for (int s = 0; s < cfg.sensor_number; ++s)
    out << ", s_" << s << " " << column_type(cfg.data_type);
  out << ", PRIMARY KEY (device, time))";
  return out.str();
}

std::string render_insert_sql(const Batch& batch, const Schema& schema, DataType type) {
  std::ostringstream out;
  out << "INSERT INTO data (device, time";
  for (std::size_t s = 0; s < schema.sensors.size(); ++s) out << ", " << schema.sensors[s];
  out << ") VALUES ";
  for (std::size_t i = 0; i < batch.records.size(); ++i) {
    const auto& r = batch.records[i];
    if (i) out << ", ";
    out << "(" << sql_quote(schema.devices[r.device]) << ", " << r.timestamp;
    for (const auto& v : r.values) out << ", " << value_literal(v, type);
    out << ")";
  }
  out << " ON CONFLICT (device, time) DO UPDATE SET ";
  for (std::size_t s = 0; s < schema.sensors.size(); ++s) {
    if (s) out << ", ";
    out << schema.sensors[s] << " = excluded." << schema.sensors[s];
  }
  return out.str();
}

std::string render_query_sql(const QueryDescriptor& q, const Schema& schema) {
  std::ostringstream out;
  switch (q.qtype) {
    case 1:
      out << "SELECT time, device, " << sensor_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << " AND time = " << *q.start_ms
          << " ORDER BY time, device";
      break;
    case 2:
      out << "SELECT time, device, " << sensor_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << time_predicate(q) << " ORDER BY time, device";
      break;
    case 3:
      out << "SELECT time, device, " << sensor_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << " ORDER BY time, device LIMIT " << *q.limit;
      break;
    case 4:
      out << "SELECT time, device, " << sensor_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << time_predicate(q) << value_predicate(q, schema)
          << " ORDER BY time, device";
      break;
    case 5:
      out << "SELECT time, device, " << sensor_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << time_predicate(q) << value_predicate(q, schema)
          << " ORDER BY time, device LIMIT " << *q.limit;
      break;
    case 6:
      out << "SELECT device, " << agg_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << time_predicate(q) << " GROUP BY device ORDER BY device";
      break;
    case 7:
      out << "SELECT device, " << agg_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << value_predicate(q, schema)
          << " GROUP BY device ORDER BY device";
      break;
    case 8:
      out << "SELECT device, " << agg_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << time_predicate(q) << value_predicate(q, schema)
          << " GROUP BY device ORDER BY device";
      break;
    case 9:
      out << "SELECT d.time, d.device, " << sensor_list(q, schema, "d.")
          << " FROM data d JOIN (SELECT device, max(time) AS mt FROM data WHERE "
          << device_in_list(q, schema)
          << " GROUP BY device) m ON d.device = m.device AND d.time = m.mt ORDER BY d.device";
      break;
    case 10:
      out << "SELECT device, (time / " << *q.interval_ms << ") * " << *q.interval_ms
          << " AS bucket, " << agg_list(q, schema) << " FROM data WHERE "
          << device_in_list(q, schema) << time_predicate(q)
          << " GROUP BY device, bucket ORDER BY device, bucket";
      break;
    default:
      break;
  }
  return out.str();
}

}  // namespace tsbench
