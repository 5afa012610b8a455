// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/query.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tsbench/rng.hpp"

namespace tsbench {

namespace {

constexpr std::uint64_t kQueryTag = 0x7175657279;

bool has_time_window(int qtype) {
  return qtype == 2 || qtype == 4 || qtype == 5 || qtype == 6 || qtype == 8 || qtype == 10;
}

bool has_value_filter(int qtype) { return qtype == 4 || qtype == 5 || qtype == 7 || qtype == 8; }

bool has_agg(int qtype) { return (qtype >= 6 && qtype <= 8) || qtype == 10; }

bool has_limit(int qtype) { return qtype == 3 || qtype == 5; }

// k distinct indices out of [0, n), ascending. Partial Fisher-Yates.
std::vector<int> sample_indices(int n, int k, Rng& rng) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.emplace_back(s.substr(pos));
      break;
    }
    parts.emplace_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

int index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("unknown name in descriptor: " + name);
  return static_cast<int>(it - names.begin());
}

}  // namespace

bool value_passes(const ValueFilter& f, double v) {
  switch (f.op) {
    case FilterOp::kGreater: return v > f.threshold;
    case FilterOp::kLess: return v < f.threshold;
    case FilterOp::kEqual: return v == f.threshold;
  }
  return false;
}

QueryGenerator::QueryGenerator(const Config& cfg, const Schema& schema, int client_id)
    : cfg_(cfg),
      schema_(schema),
      stream_(stream_seed(cfg.seed, kQueryTag, static_cast<std::uint64_t>(client_id))),
      data_span_(cfg.resolved_data_span_ms()) {}

QueryDescriptor QueryGenerator::next() {
  QueryDescriptor d;
  d.qtype = cfg_.query_type;
  // Fixed draw order: devices, sensors, time, limit.
  d.devices = sample_indices(cfg_.device_number, cfg_.query_device_num, stream_);
  d.sensors = sample_indices(cfg_.sensor_number, cfg_.query_sensor_num, stream_);

  if (d.qtype == 1) {
    // Exact point on the nominal grid.
    d.start_ms = cfg_.point_step_ms *
                 static_cast<std::int64_t>(stream_.below(data_span_ / cfg_.point_step_ms));
  } else if (has_time_window(d.qtype)) {
    d.span_ms = cfg_.query_span_ms;
    // Windows lie inside the data range; starts align to POINT_STEP, and to
    // TIME_INTERVAL for group-by-time so bucket keys coincide on every adapter.
    const std::int64_t align = d.qtype == 10 ? cfg_.time_interval_ms : cfg_.point_step_ms;
    const std::int64_t slots = (data_span_ - cfg_.query_span_ms) / align + 1;
    d.start_ms = align * static_cast<std::int64_t>(stream_.below(slots));
  }
  if (has_value_filter(d.qtype)) d.value_filter = cfg_.query_val_filter;
  if (has_agg(d.qtype)) d.agg = cfg_.query_agg_fun;
  if (has_limit(d.qtype)) d.limit = 1 + static_cast<int>(stream_.below(100));
  if (d.qtype == 10) d.interval_ms = cfg_.time_interval_ms;
  return d;
}

std::int64_t expected_group_by_points(const QueryDescriptor& d) {
  if (d.qtype != 10) throw std::invalid_argument("defined for group-by-time queries only");
  if (!d.span_ms || !d.interval_ms || *d.span_ms % *d.interval_ms != 0)
    throw std::invalid_argument("query span must be divisible by the group interval");
  return static_cast<std::int64_t>(d.devices.size()) * static_cast<std::int64_t>(d.sensors.size()) *
         (*d.span_ms / *d.interval_ms);
}

std::string descriptor_to_line(const QueryDescriptor& d, const Schema& schema) {
  std::ostringstream out;
  out << "q=" << d.qtype;
  out << " dev=";
  for (std::size_t i = 0; i < d.devices.size(); ++i)
    out << (i ? "," : "") << schema.devices[d.devices[i]];
  out << " sen=";
  for (std::size_t i = 0; i < d.sensors.size(); ++i)
    out << (i ? "," : "") << schema.sensors[d.sensors[i]];
  if (d.start_ms) out << " start=" << *d.start_ms;
  if (d.span_ms) out << " span=" << *d.span_ms;
  if (d.interval_ms) out << " interval=" << *d.interval_ms;
  if (d.agg) out << " agg=" << to_string(*d.agg);
  if (d.value_filter) out << " filter=" << to_string(*d.value_filter);
  if (d.limit) out << " limit=" << *d.limit;
  return out.str();
}

QueryDescriptor descriptor_from_line(std::string_view line, const Schema& schema) {
  QueryDescriptor d;
  std::istringstream in{std::string(line)};
  std::string token;
  bool saw_qtype = false;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad descriptor token: " + token);
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "q") {
      d.qtype = std::stoi(value);
      saw_qtype = true;
    } else if (key == "dev") {
      for (const auto& name : split(value, ',')) d.devices.push_back(index_of(schema.devices, name));
    } else if (key == "sen") {
      for (const auto& name : split(value, ',')) d.sensors.push_back(index_of(schema.sensors, name));
    } else if (key == "start") {
      d.start_ms = std::stoll(value);
    } else if (key == "span") {
      d.span_ms = std::stoll(value);
    } else if (key == "interval") {
      d.interval_ms = std::stoll(value);
    } else if (key == "agg") {
      d.agg = agg_fun_from(value);
    } else if (key == "filter") {
      d.value_filter = value_filter_from(value);
    } else if (key == "limit") {
      d.limit = std::stoi(value);
    } else {
      throw std::invalid_argument("bad descriptor key: " + key);
    }
  }
  if (!saw_qtype) throw std::invalid_argument("descriptor line has no query type");
  return d;
}

void dump_queries(const Config& cfg, const Schema& schema, std::ostream& out) {
  for (int client = 0; client < cfg.client_number; ++client) {
    QueryGenerator gen(cfg, schema, client);
    for (int i = 0; i < cfg.epoch; ++i) out << descriptor_to_line(gen.next(), schema) << '\n';
  }
}

}  // namespace tsbench
