// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsbench/value.hpp"

namespace tsbench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TimestampMode : int {
  kInOrder = 0,
  kBatchLocalOutOfOrder = 1,
  kGlobalOutOfOrder = 2,
  kPoissonOutOfOrder = 3,
};

enum class AggFun { kCount, kMax, kMin, kAvg, kSum };

enum class FilterOp { kGreater, kLess, kEqual };

struct ValueFilter {
  FilterOp op = FilterOp::kGreater;
  double threshold = 0.0;
  bool operator==(const ValueFilter&) const = default;
};

// The full parameter set. Defaults are the example column of the ingestion and
// query parameter tables; SEED and ADAPTER have no table column and are
// mandatory in config files.
struct Config {
  int group_number = 2;
  int device_number = 10;
  int sensor_number = 3;
  int client_number = 5;
  int batch_size = 100;
  int epoch = 6;
  DataType data_type = DataType::kDouble;
  std::int64_t point_step_ms = 5000;
  TimestampMode timestamp_gen_mode = TimestampMode::kInOrder;
  bool is_mul_dev_batch = false;
  bool is_random_interval = false;
  std::array<int, 5> distribution_ratio{1, 1, 1, 1, 1};  // square:sine:sawtooth:random:constant
  double ooo_ratio = 0.5;  // P, only used by mode 3
  double lambda = 2.0;     // Poisson parameter, only used by mode 3
  std::uint64_t seed = 1000003;

  int query_type = 10;
  int query_sensor_num = 2;
  int query_device_num = 2;
  AggFun query_agg_fun = AggFun::kMax;
  std::int64_t query_span_ms = 600000;
  ValueFilter query_val_filter{FilterOp::kGreater, 0.0};
  std::int64_t time_interval_ms = 60000;

  std::int64_t monitor_interval_ms = 1000;  // 0 disables monitoring
  std::string adapter = "reference";
  std::string adapter_url;                 // empty = adapter default
  std::string adapter_db = "benchmark_db";

  // Time extent of the dataset queries run against. Unset = derived from this
  // config's own BATCH_SIZE * EPOCH * POINT_STEP. The routine runner records
  // the span of the last ingest run here so query-only runs with a different
  // EPOCH see the real ingested range.
  std::optional<std::int64_t> data_span_ms;

  std::int64_t resolved_data_span_ms() const;

  bool operator==(const Config&) const = default;
};

enum class MandatoryKeys { kRequired, kOptional };

// Line-oriented KEY=VALUE with '#' comments. Unknown keys are rejected; every
// error names the offending key. With kRequired, SEED and ADAPTER must appear.
Config parse_config(std::string_view text, MandatoryKeys mandatory = MandatoryKeys::kRequired);

// Same split used by the routine runner: raw pairs first, then Config.
std::vector<std::pair<std::string, std::string>> parse_properties(std::string_view text);
Config config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                         MandatoryKeys mandatory);

// Throws ConfigError when a cross-field invariant is violated.
void validate(const Config& cfg);

// Canonical serialization; parse_config(to_properties(c)) == c.
std::string to_properties(const Config& cfg);

bool is_known_config_key(std::string_view key);

// Enum <-> text helpers (canonical config spellings).
std::string to_string(DataType t);
std::string to_string(AggFun f);
std::string to_string(FilterOp op);
std::string to_string(const ValueFilter& f);
DataType data_type_from(std::string_view s);
AggFun agg_fun_from(std::string_view s);
ValueFilter value_filter_from(std::string_view s);

}  // namespace tsbench
