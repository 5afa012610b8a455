// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include <set>
#include <sstream>

#include "doctest.h"
#include "tsbench/rng.hpp"
#include "tsbench/schema.hpp"

using namespace tsbench;

namespace {

Config defaults() { return parse_config("", MandatoryKeys::kOptional); }

std::string schema_fingerprint(const Schema& s) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& g : s.groups) out << g << ';';
  for (std::size_t d = 0; d < s.devices.size(); ++d) out << s.devices[d] << ':' << s.device_group[d] << ';';
  for (const auto& f : s.functions) {
    out << static_cast<int>(f.kind) << ',' << f.period_ms << ',' << f.low << ',' << f.high << ','
        << f.offset << ',' << f.amplitude << ',' << f.phase << ',' << f.value << ','
        << f.noise_sigma << ',' << f.stream_seed << ';';
  }
  return out.str();
}

}  // namespace

TEST_CASE("parse_config reads keys and applies example defaults") {
  const auto cfg = parse_config("BATCH_SIZE=100\nEPOCH=6\nSEED=7\nADAPTER=reference\n");
  CHECK(cfg.batch_size == 100);
  CHECK(cfg.epoch == 6);
  CHECK(cfg.seed == 7);

  // Empty file with defaults enabled equals the documented example column.
  const auto d = defaults();
  CHECK(d.group_number == 2);
  CHECK(d.device_number == 10);
  CHECK(d.sensor_number == 3);
  CHECK(d.client_number == 5);
  CHECK(d.batch_size == 100);
  CHECK(d.epoch == 6);
  CHECK(d.data_type == DataType::kDouble);
  CHECK(d.point_step_ms == 5000);
  CHECK(d.timestamp_gen_mode == TimestampMode::kInOrder);
  CHECK_FALSE(d.is_mul_dev_batch);
  CHECK_FALSE(d.is_random_interval);
  CHECK(d.distribution_ratio == std::array<int, 5>{1, 1, 1, 1, 1});
  CHECK(d.query_type == 10);
  CHECK(d.query_sensor_num == 2);
  CHECK(d.query_device_num == 2);
  CHECK(d.query_agg_fun == AggFun::kMax);
  CHECK(d.query_span_ms == 600000);
  CHECK(d.query_val_filter == ValueFilter{FilterOp::kGreater, 0.0});
  CHECK(d.time_interval_ms == 60000);
}

TEST_CASE("parse_config rejects bad input with the key name") {
  CHECK_THROWS_WITH_AS(parse_config("BATCH_SIZE=0", MandatoryKeys::kOptional),
                       doctest::Contains("BATCH_SIZE"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("NOT_A_KEY=1", MandatoryKeys::kOptional),
                       doctest::Contains("NOT_A_KEY"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("BATCH_SIZE=abc", MandatoryKeys::kOptional),
                       doctest::Contains("BATCH_SIZE"), ConfigError);
  CHECK_THROWS_AS(parse_config("BATCH_SIZE"), ConfigError);
  // mandatory keys
  CHECK_THROWS_WITH_AS(parse_config("ADAPTER=reference"), doctest::Contains("SEED"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("SEED=1"), doctest::Contains("ADAPTER"), ConfigError);
}

TEST_CASE("parse_config enforces cross-field invariants") {
  CHECK_THROWS_WITH_AS(parse_config("DEVICE_NUMBER=2\nGROUP_NUMBER=3", MandatoryKeys::kOptional),
                       doctest::Contains("DEVICE_NUMBER"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("CLIENT_NUMBER=11", MandatoryKeys::kOptional),
                       doctest::Contains("CLIENT_NUMBER"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("QUERY_SENSOR_NUM=4", MandatoryKeys::kOptional),
                       doctest::Contains("QUERY_SENSOR_NUM"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("QUERY_DEVICE_NUM=11", MandatoryKeys::kOptional),
                       doctest::Contains("QUERY_DEVICE_NUM"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config("TIME_INTERVAL=700000", MandatoryKeys::kOptional),
      doctest::Contains("TIME_INTERVAL"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("DISTRIBUTION_RATIO=0:0:0:0:0", MandatoryKeys::kOptional),
                       doctest::Contains("DISTRIBUTION_RATIO"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("QUERY_SPAN=4000000", MandatoryKeys::kOptional),
                       doctest::Contains("QUERY_SPAN"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("DATA_TYPE=TEXT\nQUERY_AGG_FUN=avg", MandatoryKeys::kOptional),
                       doctest::Contains("QUERY_AGG_FUN"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config("DATA_TYPE=TEXT\nQUERY_TYPE=4", MandatoryKeys::kOptional),
      doctest::Contains("QUERY_TYPE"), ConfigError);
  CHECK_NOTHROW(
      parse_config("DATA_TYPE=TEXT\nQUERY_AGG_FUN=count", MandatoryKeys::kOptional));
  // comments and blank lines are fine
  CHECK_NOTHROW(parse_config("# comment\n\nSENSOR_NUMBER=10 # trailing\n", MandatoryKeys::kOptional));
  // a shrunken dataset must still cover the query span
  CHECK_THROWS_WITH_AS(parse_config("BATCH_SIZE=10", MandatoryKeys::kOptional),
                       doctest::Contains("QUERY_SPAN"), ConfigError);
}

TEST_CASE("config round-trips through its canonical serialization") {
  auto cfg = defaults();
  cfg.seed = 424242;
  cfg.ooo_ratio = 0.125;
  cfg.lambda = 3.5;
  cfg.adapter = "sqlite";
  cfg.adapter_url = "/tmp/x.db";
  cfg.data_span_ms = 6000000;
  cfg.query_val_filter = ValueFilter{FilterOp::kLess, 12.25};
  const auto parsed = parse_config(to_properties(cfg));
  CHECK(parsed == cfg);
}

TEST_CASE("derive_schema splits devices into contiguous equal blocks") {
  auto cfg = defaults();
  const auto schema = derive_schema(cfg);
  REQUIRE(schema.devices.size() == 10);
  CHECK(schema.groups == std::vector<std::string>{"group_0", "group_1"});
  CHECK(schema.devices[3] == "d_3");
  CHECK(schema.device_group[3] == 0);
  CHECK(schema.device_group[8] == 1);
  CHECK(schema.sensors == std::vector<std::string>{"s_0", "s_1", "s_2"});

  SUBCASE("single group holds everything") {
    cfg.group_number = 1;
    const auto s1 = derive_schema(cfg);
    for (int g : s1.device_group) CHECK(g == 0);
  }

  SUBCASE("non-divisible counts leave the remainder in the last group") {
    cfg.group_number = 3;
    const auto s3 = derive_schema(cfg);
    // ceil(10/3) = 4 per block: sizes 4,4,2.
    std::array<int, 3> sizes{};
    for (int g : s3.device_group) sizes[g]++;
    CHECK(sizes == std::array<int, 3>{4, 4, 2});
    for (int d = 0; d + 1 < 10; ++d) CHECK(s3.device_group[d] <= s3.device_group[d + 1]);
  }
}

TEST_CASE("partition_devices is a balanced contiguous partition") {
  auto cfg = defaults();

  SUBCASE("ten devices over five clients") {
    const auto p = partition_devices(cfg);
    REQUIRE(p.size() == 5);
    CHECK(p[0] == std::vector<int>{0, 1});
    CHECK(p[1] == std::vector<int>{2, 3});
    CHECK(p[4] == std::vector<int>{8, 9});
  }

  SUBCASE("one client owns all devices") {
    cfg.client_number = 1;
    const auto p = partition_devices(cfg);
    REQUIRE(p.size() == 1);
    CHECK(p[0].size() == 10);
  }

  SUBCASE("ten devices over three clients split 4,3,3") {
    cfg.client_number = 3;
    const auto p = partition_devices(cfg);
    CHECK(p[0].size() == 4);
    CHECK(p[1].size() == 3);
    CHECK(p[2].size() == 3);
  }

  SUBCASE("always a partition: disjoint, covering, near-equal") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      cfg.device_number = 1 + static_cast<int>(rng.below(40));
      cfg.group_number = 1;
      cfg.client_number = 1 + static_cast<int>(rng.below(cfg.device_number));
      cfg.query_device_num = 1;
      const auto p = partition_devices(cfg);
      std::set<int> seen;
      std::size_t min_size = SIZE_MAX, max_size = 0;
      int expect = 0;
      for (const auto& block : p) {
        min_size = std::min(min_size, block.size());
        max_size = std::max(max_size, block.size());
        for (int d : block) {
          CHECK(d == expect++);  // contiguous and ordered
          CHECK(seen.insert(d).second);
        }
      }
      CHECK(seen.size() == static_cast<std::size_t>(cfg.device_number));
      CHECK(max_size - min_size <= 1);
    }
  }
}

TEST_CASE("assign_distributions apportions kinds by largest remainder") {
  auto cfg = defaults();

  SUBCASE("degenerate ratio gives one kind") {
    cfg.distribution_ratio = {1, 0, 0, 0, 0};
    const auto fns = assign_distributions(cfg);
    REQUIRE(fns.size() == 30);
    for (const auto& f : fns) CHECK(f.kind == Waveform::kSquare);
  }

  SUBCASE("uniform ratio over 30 sensors gives six of each") {
    const auto counts = apportion_kinds({1, 1, 1, 1, 1}, 30);
    CHECK(counts == std::array<int, 5>{6, 6, 6, 6, 6});
  }

  SUBCASE("2:1 over 10 sensors gives 7 and 3") {
    // quotas 6.67 and 3.33; floors 6+3 leave one seat for the larger remainder
    const auto counts = apportion_kinds({2, 1, 0, 0, 0}, 10);
    CHECK(counts == std::array<int, 5>{7, 3, 0, 0, 0});
  }

  SUBCASE("counts never deviate from the real quota by one or more") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
      std::array<int, 5> ratio{};
      int total = 0;
      for (auto& r : ratio) total += (r = static_cast<int>(rng.below(5)));
      if (total == 0) ratio[0] = total = 1;
      const int n = 1 + static_cast<int>(rng.below(100));
      const auto counts = apportion_kinds(ratio, n);
      int assigned = 0;
      for (int k = 0; k < 5; ++k) {
        const double quota = static_cast<double>(ratio[k]) * n / total;
        CHECK(std::abs(counts[k] - quota) < 1.0);
        assigned += counts[k];
      }
      CHECK(assigned == n);
    }
  }

  SUBCASE("noise applies to periodic kinds only") {
    const auto fns = assign_distributions(cfg);
    for (const auto& f : fns) {
      if (f.kind == Waveform::kRandomRange || f.kind == Waveform::kConstant)
        CHECK(f.noise_sigma == 0.0);
      if (f.kind == Waveform::kSquare || f.kind == Waveform::kSawtooth) CHECK(f.low < f.high);
      if (f.kind == Waveform::kSine) CHECK(f.amplitude > 0.0);
    }
  }
}

TEST_CASE("identical configs produce byte-identical schemas") {
  auto cfg = defaults();
  cfg.seed = 20220101;
  const auto a = schema_fingerprint(derive_schema(cfg));
  const auto b = schema_fingerprint(derive_schema(cfg));
  CHECK(a == b);

  cfg.seed = 20220102;
  CHECK(a != schema_fingerprint(derive_schema(cfg)));
}
