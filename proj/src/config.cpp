// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

namespace tsbench {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + " " + what);
}

std::int64_t parse_int(const std::string& key, std::string_view v) {
  std::int64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) fail(key, "must be an integer, got '" + std::string(v) + "'");
  return out;
}

std::int64_t parse_positive(const std::string& key, std::string_view v) {
  auto n = parse_int(key, v);
  if (n <= 0) fail(key, "must be positive");
  return n;
}

std::uint64_t parse_u64(const std::string& key, std::string_view v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) fail(key, "must be a 64-bit unsigned integer");
  return out;
}

double parse_real(const std::string& key, std::string_view v) {
  std::string tmp(v);
  char* end = nullptr;
  double out = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size() || tmp.empty()) fail(key, "must be a real number");
  return out;
}

bool parse_bool(const std::string& key, std::string_view v) {
  std::string low(v);
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "true" || low == "1") return true;
  if (low == "false" || low == "0") return false;
  fail(key, "must be true or false");
}

std::array<int, 5> parse_ratio(const std::string& key, std::string_view v) {
  std::array<int, 5> out{};
  std::size_t idx = 0;
  std::size_t pos = 0;
  while (idx < 5) {
    auto colon = v.find(':', pos);
    auto part = trim(colon == std::string_view::npos ? v.substr(pos) : v.substr(pos, colon - pos));
    auto n = parse_int(key, part);
    if (n < 0) fail(key, "parts must be non-negative");
    out[idx++] = static_cast<int>(n);
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (idx != 5) fail(key, "must have five ':'-separated parts");
  return out;
}

const std::vector<std::string>& key_order() {
  static const std::vector<std::string> keys = {
      "GROUP_NUMBER", "DEVICE_NUMBER", "SENSOR_NUMBER", "CLIENT_NUMBER", "BATCH_SIZE",
      "EPOCH", "DATA_TYPE", "POINT_STEP", "TIMESTAMP_GEN_MODE", "IS_MUL_DEV_BATCH",
      "IS_RANDOM_INTERVAL", "DISTRIBUTION_RATIO", "OOO_RATIO", "LAMBDA", "SEED",
      "QUERY_TYPE", "QUERY_SENSOR_NUM", "QUERY_DEVICE_NUM", "QUERY_AGG_FUN", "QUERY_SPAN",
      "QUERY_VAL_FILTER", "TIME_INTERVAL", "MONITOR_INTERVAL", "ADAPTER", "ADAPTER_URL",
      "ADAPTER_DB", "DATA_SPAN"};
  return keys;
}

void apply_key(Config& cfg, const std::string& key, const std::string& value) {
  if (key == "GROUP_NUMBER") cfg.group_number = static_cast<int>(parse_positive(key, value));
  else if (key == "DEVICE_NUMBER") cfg.device_number = static_cast<int>(parse_positive(key, value));
  else if (key == "SENSOR_NUMBER") cfg.sensor_number = static_cast<int>(parse_positive(key, value));
  else if (key == "CLIENT_NUMBER") cfg.client_number = static_cast<int>(parse_positive(key, value));
  else if (key == "BATCH_SIZE") cfg.batch_size = static_cast<int>(parse_positive(key, value));
  else if (key == "EPOCH") {
    auto n = parse_int(key, value);
    if (n < 0) fail(key, "must be non-negative");
    cfg.epoch = static_cast<int>(n);
  } else if (key == "DATA_TYPE") cfg.data_type = data_type_from(value);
  else if (key == "POINT_STEP") cfg.point_step_ms = parse_positive(key, value);
  else if (key == "TIMESTAMP_GEN_MODE") {
    auto n = parse_int(key, value);
    if (n < 0 || n > 3) fail(key, "must be 0..3");
    cfg.timestamp_gen_mode = static_cast<TimestampMode>(n);
  } else if (key == "IS_MUL_DEV_BATCH") cfg.is_mul_dev_batch = parse_bool(key, value);
  else if (key == "IS_RANDOM_INTERVAL") cfg.is_random_interval = parse_bool(key, value);
  else if (key == "DISTRIBUTION_RATIO") cfg.distribution_ratio = parse_ratio(key, value);
  else if (key == "OOO_RATIO") {
    cfg.ooo_ratio = parse_real(key, value);
    if (cfg.ooo_ratio < 0.0 || cfg.ooo_ratio > 1.0) fail(key, "must be in [0,1]");
  } else if (key == "LAMBDA") {
    cfg.lambda = parse_real(key, value);
    if (cfg.lambda <= 0.0) fail(key, "must be positive");
  } else if (key == "SEED") cfg.seed = parse_u64(key, value);
  else if (key == "QUERY_TYPE") {
    auto n = parse_int(key, value);
    if (n < 1 || n > 10) fail(key, "must be 1..10");
    cfg.query_type = static_cast<int>(n);
  } else if (key == "QUERY_SENSOR_NUM") cfg.query_sensor_num = static_cast<int>(parse_positive(key, value));
  else if (key == "QUERY_DEVICE_NUM") cfg.query_device_num = static_cast<int>(parse_positive(key, value));
  else if (key == "QUERY_AGG_FUN") cfg.query_agg_fun = agg_fun_from(value);
  else if (key == "QUERY_SPAN") cfg.query_span_ms = parse_positive(key, value);
  else if (key == "QUERY_VAL_FILTER") cfg.query_val_filter = value_filter_from(value);
  else if (key == "TIME_INTERVAL") cfg.time_interval_ms = parse_positive(key, value);
  else if (key == "MONITOR_INTERVAL") {
    auto n = parse_int(key, value);
    if (n != 0 && n < 100) fail(key, "must be 0 (off) or >= 100 ms");
    cfg.monitor_interval_ms = n;
  } else if (key == "ADAPTER") {
    if (value != "reference" && value != "sqlite" && value != "influxdb")
      fail(key, "must be one of reference, sqlite, influxdb");
    cfg.adapter = value;
  } else if (key == "ADAPTER_URL") cfg.adapter_url = value;
  else if (key == "ADAPTER_DB") {
    if (value.empty()) fail(key, "must not be empty");
    cfg.adapter_db = value;
  } else if (key == "DATA_SPAN") cfg.data_span_ms = parse_positive(key, value);
  else fail(key, "is not a recognized parameter");
}

}  // namespace

std::int64_t Config::resolved_data_span_ms() const {
  if (data_span_ms) return *data_span_ms;
  return static_cast<std::int64_t>(batch_size) * epoch * point_step_ms;
}

std::vector<std::pair<std::string, std::string>> parse_properties(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++line_no;
    auto line = trim(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (!line.empty()) {
      auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("line " + std::to_string(line_no) + " is not KEY=VALUE: '" + std::string(line) + "'");
      auto key = trim(line.substr(0, eq));
      auto value = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + " has an empty key");
      pairs.emplace_back(std::string(key), std::string(value));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return pairs;
}

Config config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                         MandatoryKeys mandatory) {
  Config cfg;
  std::set<std::string> seen;
  for (const auto& [key, value] : pairs) {
    apply_key(cfg, key, value);
    seen.insert(key);
  }
  if (mandatory == MandatoryKeys::kRequired) {
    for (const char* k : {"SEED", "ADAPTER"}) {
      if (!seen.count(k)) fail(k, "is mandatory and missing");
    }
  }
  validate(cfg);
  return cfg;
}

Config parse_config(std::string_view text, MandatoryKeys mandatory) {
  return config_from_pairs(parse_properties(text), mandatory);
}

void validate(const Config& cfg) {
  if (cfg.device_number < cfg.group_number)
    fail("DEVICE_NUMBER", "must be >= GROUP_NUMBER");
  if (cfg.client_number > cfg.device_number)
    fail("CLIENT_NUMBER", "must be <= DEVICE_NUMBER");
  if (cfg.query_sensor_num > cfg.sensor_number)
    fail("QUERY_SENSOR_NUM", "must be <= SENSOR_NUMBER");
  if (cfg.query_device_num > cfg.device_number)
    fail("QUERY_DEVICE_NUM", "must be <= DEVICE_NUMBER");
  if (cfg.time_interval_ms > cfg.query_span_ms)
    fail("TIME_INTERVAL", "must be <= QUERY_SPAN");
  if (std::all_of(cfg.distribution_ratio.begin(), cfg.distribution_ratio.end(),
                  [](int r) { return r == 0; }))
    fail("DISTRIBUTION_RATIO", "must not be all zero");
  if (cfg.timestamp_gen_mode == TimestampMode::kPoissonOutOfOrder && cfg.lambda <= 0.0)
    fail("LAMBDA", "must be positive for TIMESTAMP_GEN_MODE=3");
  if (cfg.epoch > 0 && cfg.query_span_ms > cfg.resolved_data_span_ms())
    fail("QUERY_SPAN", "exceeds the data time range");
  if (cfg.query_type == 10) {
    if (cfg.query_span_ms % cfg.time_interval_ms != 0)
      fail("QUERY_SPAN", "must be divisible by TIME_INTERVAL for QUERY_TYPE=10");
    if (cfg.time_interval_ms % cfg.point_step_ms != 0)
      fail("TIME_INTERVAL", "must be a multiple of POINT_STEP for QUERY_TYPE=10");
  }
  if (cfg.data_type == DataType::kText) {
    const bool aggregating = (cfg.query_type >= 6 && cfg.query_type <= 8) || cfg.query_type == 10;
    if (aggregating && cfg.query_agg_fun != AggFun::kCount)
      fail("QUERY_AGG_FUN", "only count is defined over TEXT data");
    const bool value_filtered = cfg.query_type == 4 || cfg.query_type == 5 ||
                                cfg.query_type == 7 || cfg.query_type == 8;
    if (value_filtered)
      fail("QUERY_TYPE", "value-filtered query types are not defined over TEXT data");
  }
}

std::string to_properties(const Config& cfg) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& key : key_order()) {
    if (key == "GROUP_NUMBER") out << key << "=" << cfg.group_number;
    else if (key == "DEVICE_NUMBER") out << key << "=" << cfg.device_number;
    else if (key == "SENSOR_NUMBER") out << key << "=" << cfg.sensor_number;
    else if (key == "CLIENT_NUMBER") out << key << "=" << cfg.client_number;
    else if (key == "BATCH_SIZE") out << key << "=" << cfg.batch_size;
    else if (key == "EPOCH") out << key << "=" << cfg.epoch;
    else if (key == "DATA_TYPE") out << key << "=" << to_string(cfg.data_type);
    else if (key == "POINT_STEP") out << key << "=" << cfg.point_step_ms;
    else if (key == "TIMESTAMP_GEN_MODE") out << key << "=" << static_cast<int>(cfg.timestamp_gen_mode);
    else if (key == "IS_MUL_DEV_BATCH") out << key << "=" << (cfg.is_mul_dev_batch ? "true" : "false");
    else if (key == "IS_RANDOM_INTERVAL") out << key << "=" << (cfg.is_random_interval ? "true" : "false");
    else if (key == "DISTRIBUTION_RATIO") {
      out << key << "=";
      for (std::size_t i = 0; i < 5; ++i) out << (i ? ":" : "") << cfg.distribution_ratio[i];
    } else if (key == "OOO_RATIO") out << key << "=" << cfg.ooo_ratio;
    else if (key == "LAMBDA") out << key << "=" << cfg.lambda;
    else if (key == "SEED") out << key << "=" << cfg.seed;
    else if (key == "QUERY_TYPE") out << key << "=" << cfg.query_type;
    else if (key == "QUERY_SENSOR_NUM") out << key << "=" << cfg.query_sensor_num;
    else if (key == "QUERY_DEVICE_NUM") out << key << "=" << cfg.query_device_num;
    else if (key == "QUERY_AGG_FUN") out << key << "=" << to_string(cfg.query_agg_fun);
    else if (key == "QUERY_SPAN") out << key << "=" << cfg.query_span_ms;
    else if (key == "QUERY_VAL_FILTER") out << key << "=" << to_string(cfg.query_val_filter);
    else if (key == "TIME_INTERVAL") out << key << "=" << cfg.time_interval_ms;
    else if (key == "MONITOR_INTERVAL") out << key << "=" << cfg.monitor_interval_ms;
    else if (key == "ADAPTER") out << key << "=" << cfg.adapter;
    else if (key == "ADAPTER_URL") out << key << "=" << cfg.adapter_url;
    else if (key == "ADAPTER_DB") out << key << "=" << cfg.adapter_db;
    else if (key == "DATA_SPAN") {
      if (!cfg.data_span_ms) continue;
      out << key << "=" << *cfg.data_span_ms;
    }
    out << "\n";
  }
  return out.str();
}

bool is_known_config_key(std::string_view key) {
  const auto& keys = key_order();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string to_string(DataType t) {
  switch (t) {
    case DataType::kFloat: return "FLOAT";
    case DataType::kDouble: return "DOUBLE";
    case DataType::kInt32: return "INT32";
    case DataType::kInt64: return "INT64";
    case DataType::kText: return "TEXT";
  }
  return "DOUBLE";
}

std::string to_string(AggFun f) {
  switch (f) {
    case AggFun::kCount: return "count";
    case AggFun::kMax: return "max";
    case AggFun::kMin: return "min";
    case AggFun::kAvg: return "avg";
    case AggFun::kSum: return "sum";
  }
  return "max";
}

std::string to_string(FilterOp op) {
  switch (op) {
    case FilterOp::kGreater: return ">";
    case FilterOp::kLess: return "<";
    case FilterOp::kEqual: return "=";
  }
  return ">";
}

std::string to_string(const ValueFilter& f) {
  std::ostringstream out;
  out.precision(17);
  out << to_string(f.op) << f.threshold;
  return out.str();
}

DataType data_type_from(std::string_view s) {
  if (s == "FLOAT") return DataType::kFloat;
  if (s == "DOUBLE") return DataType::kDouble;
  if (s == "INT32") return DataType::kInt32;
  if (s == "INT64") return DataType::kInt64;
  if (s == "TEXT") return DataType::kText;
  fail("DATA_TYPE", "must be one of FLOAT, DOUBLE, INT32, INT64, TEXT");
}

AggFun agg_fun_from(std::string_view s) {
  if (s == "count") return AggFun::kCount;
  if (s == "max") return AggFun::kMax;
  if (s == "min") return AggFun::kMin;
  if (s == "avg") return AggFun::kAvg;
  if (s == "sum") return AggFun::kSum;
  fail("QUERY_AGG_FUN", "must be one of count, max, min, avg, sum");
}

ValueFilter value_filter_from(std::string_view s) {
  auto body = trim(s);
  if (body.empty()) fail("QUERY_VAL_FILTER", "must be <op><threshold>, e.g. >0");
  ValueFilter f;
  switch (body.front()) {
    case '>': f.op = FilterOp::kGreater; break;
    case '<': f.op = FilterOp::kLess; break;
    case '=': f.op = FilterOp::kEqual; break;
    default: fail("QUERY_VAL_FILTER", "must start with >, < or =");
  }
  f.threshold = parse_real("QUERY_VAL_FILTER", trim(body.substr(1)));
  return f;
}

}  // namespace tsbench
