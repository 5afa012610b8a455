// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
//
// Acceptance suite: one criterion per function, one PASS/FAIL line each, with
// a hard wall-clock budget per criterion. Exit code is the failure count.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "support/dump_oracle.hpp"
#include "support/line_protocol_checker.hpp"
#include "support/stats_oracle.hpp"
#include "tsbench/controller.hpp"
#include "tsbench/line_protocol.hpp"
#include "tsbench/persistence.hpp"
#include "tsbench/reference_adapter.hpp"

using namespace tsbench;

namespace {

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<void(std::ostringstream&)> body;  // throws on failure
};

#define REQUIRE_TRUE(cond)                                                      \
  do {                                                                          \
    if (!(cond)) throw std::runtime_error("check failed: " #cond);              \
  } while (0)

#define REQUIRE_NEAR(value, target, tol)                                            \
  do {                                                                               \
    const double v_ = (value);                                                       \
    const double t_ = (target);                                                      \
    if (std::fabs(v_ - t_) > (tol)) {                                                \
      std::ostringstream msg_;                                                       \
      msg_ << "check failed: " #value " = " << v_ << " not within " << (tol)         \
           << " of " << t_;                                                          \
      throw std::runtime_error(msg_.str());                                          \
    }                                                                                \
  } while (0)

Config table1_config() {
  auto cfg = parse_config("", MandatoryKeys::kOptional);
  cfg.seed = 20240501;
  cfg.monitor_interval_ms = 0;
  return cfg;
}

struct SharedReference {
  std::shared_ptr<ReferenceStore> store = std::make_shared<ReferenceStore>();
  AdapterFactory factory = [this] { return std::make_unique<ReferenceAdapter>(store); };
};

// ---- 1. workload volume -----------------------------------------------------
void criterion_workload_volume(std::ostringstream& detail) {
  const auto cfg = table1_config();
  SharedReference ref;
  const auto result = run_ingestion_test(cfg, ref.factory);

  REQUIRE_TRUE(ref.store->point_count() == 18000);
  REQUIRE_TRUE(result.operations.size() == 60);
  REQUIRE_TRUE(result.failures == 0);

  const auto schema = derive_schema(cfg);
  for (int d = 0; d < cfg.device_number; ++d) {
    for (int s = 0; s < cfg.sensor_number; ++s) {
      QueryDescriptor q;
      q.qtype = 6;
      q.devices = {d};
      q.sensors = {s};
      q.start_ms = 0;
      q.span_ms = cfg.resolved_data_span_ms();
      q.agg = AggFun::kCount;
      const auto rows = ref.store->execute(q, schema);
      REQUIRE_TRUE(rows.size() == 1);
      REQUIRE_TRUE(std::get<std::int64_t>(rows[0].value) == 600);
    }
  }
  detail << "18000 points, 600 per series, 60 ops";
}

// ---- 2. group-by-time count -------------------------------------------------
void criterion_group_by_count(std::ostringstream& detail) {
  const auto ingest_cfg = table1_config();
  SharedReference ref;
  run_ingestion_test(ingest_cfg, ref.factory);

  auto query_cfg = table1_config();
  query_cfg.client_number = 2;
  query_cfg.epoch = 100;
  query_cfg.data_span_ms = ingest_cfg.resolved_data_span_ms();

  const auto result = run_query_test(query_cfg, ref.factory);
  REQUIRE_TRUE(result.operations.size() == 200);
  std::size_t exact = 0;
  for (const auto& op : result.operations) {
    REQUIRE_TRUE(op.success);
    exact += op.points == 40;
  }
  REQUIRE_TRUE(exact == 200);
  detail << "200/200 queries returned exactly 40 rows";
}

// ---- 3. out-of-order ratio --------------------------------------------------
void criterion_out_of_order_ratio(std::ostringstream& detail) {
  for (double p : {0.1, 0.5}) {
    auto cfg = table1_config();
    cfg.timestamp_gen_mode = TimestampMode::kPoissonOutOfOrder;
    cfg.ooo_ratio = p;
    cfg.lambda = 2.0;
    cfg.batch_size = 1000;
    cfg.epoch = 100;  // 1e5 points
    TimestampGenerator gen(cfg, 0);
    std::vector<std::int64_t> ts;
    ts.reserve(100000);
    for (int i = 0; i < 100000; ++i) ts.push_back(gen.next());
    const double realized = out_of_order_ratio(ts);
    REQUIRE_NEAR(realized, p, 0.01);
    detail << "P=" << p << " realized " << realized << "  ";
  }
}

// ---- 4. poisson sampler -----------------------------------------------------
void criterion_poisson_sampler(std::ostringstream& detail) {
  for (double lambda : {2.0, 10.0}) {
    Rng rng(987654321 + static_cast<std::uint64_t>(lambda));
    const int n = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
      const auto x = sample_poisson(lambda, rng);
      sum += x;
      sum_sq += static_cast<double>(x) * x;
      zeros += x == 0;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    REQUIRE_NEAR(mean, lambda, 0.005 * lambda);
    REQUIRE_NEAR(var, lambda, 0.02 * lambda);
    if (lambda == 2.0) {
      REQUIRE_NEAR(static_cast<double>(zeros) / n, 0.1353, 0.002);
      detail << "lambda=2: P(X=0)=" << static_cast<double>(zeros) / n << "  ";
    }
    detail << "lambda=" << lambda << ": mean=" << mean << " var=" << var << "  ";
  }
}

// ---- 5. metrics oracle ------------------------------------------------------
void criterion_metrics_oracle(std::ostringstream& detail) {
  Rng rng(13579);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(10000);
    std::vector<double> samples(n);
    for (auto& s : samples) s = rng.uniform01() * 500.0;
    const auto stats = summarize(samples);
    for (int p : {1, 5, 50, 90, 95, 99}) {
      const double oracle = stats_oracle::nearest_rank(samples, p);
      const double got = p == 1    ? stats.p1
                         : p == 5  ? stats.p5
                         : p == 50 ? stats.p50
                         : p == 90 ? stats.p90
                         : p == 95 ? stats.p95
                                   : stats.p99;
      REQUIRE_TRUE(got == oracle);
    }
    const double trimmed = stats_oracle::trimmed_mean(samples);
    REQUIRE_NEAR(stats.middle_average, trimmed, 1e-9 * std::max(1.0, std::fabs(trimmed)));
  }

  std::vector<double> ladder(100);
  for (int i = 0; i < 100; ++i) ladder[i] = i + 1.0;
  REQUIRE_NEAR(summarize(ladder).middle_average, 50.5, 1e-12);

  REQUIRE_NEAR(throughput(std::vector<double>{10000.0, 12000.0}, 1200000), 100000.0, 1e-9);
  detail << "1000 random lists exact; middle_average(1..100)=50.5; throughput rule ok";
}

// ---- 6. query oracle equivalence -------------------------------------------
void criterion_query_oracle(std::ostringstream& detail) {
  auto cfg = table1_config();
  cfg.device_number = 5;
  cfg.group_number = 2;
  cfg.sensor_number = 4;
  cfg.client_number = 2;
  cfg.batch_size = 50;
  cfg.epoch = 10;  // 50*10*4*5 = 10000 points
  cfg.timestamp_gen_mode = TimestampMode::kPoissonOutOfOrder;
  cfg.ooo_ratio = 0.2;
  cfg.lambda = 2.0;
  cfg.query_sensor_num = 2;
  cfg.query_device_num = 2;
  cfg.query_span_ms = 300000;
  cfg.time_interval_ms = 60000;

  const auto schema = derive_schema(cfg);
  SharedReference ref;
  ReferenceAdapter adapter(ref.store);
  adapter.init_schema(schema);

  std::ostringstream dump;
  dump_workload(cfg, schema, dump);
  for (const auto& devices : partition_devices(cfg)) {
    ClientWorkload wl(cfg, schema, devices);
    while (!wl.done()) adapter.insert_batch(wl.next_batch());
  }
  REQUIRE_TRUE(ref.store->point_count() <= 10000);  // rewinds deduplicate

  const auto arrival = dump_oracle::parse_dump(dump.str());
  REQUIRE_TRUE(arrival.size() == 2500);  // records = points / sensors
  const auto stored = dump_oracle::dedup(arrival);

  cfg.data_span_ms = cfg.resolved_data_span_ms();
  int checked = 0;
  for (int qtype = 1; qtype <= 10; ++qtype) {
    auto qcfg = cfg;
    qcfg.query_type = qtype;
    QueryGenerator gen(qcfg, schema, 7);
    for (int i = 0; i < 50; ++i) {
      const auto q = gen.next();
      const auto [adapter_rows, cost] = adapter.execute_query(q);
      const auto oracle_rows = dump_oracle::evaluate(stored, q, schema);
      if (!rows_equivalent(adapter_rows, oracle_rows, 1e-9)) {
        std::ostringstream msg;
        msg << "qtype " << qtype << " instance " << i << ": adapter " << adapter_rows.size()
            << " rows vs oracle " << oracle_rows.size() << " rows";
        throw std::runtime_error(msg.str());
      }
      ++checked;
    }
  }
  REQUIRE_TRUE(checked == 500);
  detail << "500 query instances identical across both routes";
}

// ---- 7. determinism ---------------------------------------------------------
void criterion_determinism(std::ostringstream& detail) {
  auto run_once = [](std::string& workload_dump, std::string& ops_csv) {
    auto cfg = table1_config();
    cfg.epoch = 3;
    const auto schema = derive_schema(cfg);
    std::ostringstream dump;
    dump_workload(cfg, schema, dump);
    workload_dump = dump.str();

    SharedReference ref;
    std::vector<PhaseResult> phases;
    phases.push_back({"ingest", run_ingestion_test(cfg, ref.factory)});
    auto qcfg = cfg;
    qcfg.epoch = 20;
    qcfg.data_span_ms = cfg.resolved_data_span_ms();
    phases.push_back({"query", run_query_test(qcfg, ref.factory)});

    // operations.csv contents minus the timing columns (start_wall_ms, cost_ms)
    std::ostringstream ops;
    for (const auto& phase : phases) {
      for (const auto& op : phase.result.operations) {
        ops << phase.phase << ',' << op.op << ',' << op.client_id << ',' << op.seq << ','
            << op.points << ',' << op.success << ',' << op.error << '\n';
      }
    }
    ops_csv = ops.str();
  };

  std::string dump_a, dump_b, ops_a, ops_b;
  run_once(dump_a, ops_a);
  run_once(dump_b, ops_b);
  REQUIRE_TRUE(!dump_a.empty());
  REQUIRE_TRUE(dump_a == dump_b);
  REQUIRE_TRUE(!ops_a.empty());
  REQUIRE_TRUE(ops_a == ops_b);
  detail << "byte-identical dumps and operation rows across two runs";
}

// ---- 8. batch-local ordering ------------------------------------------------
void criterion_batch_local_order(std::ostringstream& detail) {
  auto cfg = table1_config();
  cfg.timestamp_gen_mode = TimestampMode::kBatchLocalOutOfOrder;
  cfg.batch_size = 10;
  cfg.epoch = 10000;
  TimestampGenerator gen(cfg, 0);
  std::int64_t prev_max = -1;
  for (int b = 0; b < 10000; ++b) {
    std::int64_t batch_min = INT64_MAX, batch_max = INT64_MIN;
    for (int k = 0; k < 10; ++k) {
      const auto t = gen.next();
      batch_min = std::min(batch_min, t);
      batch_max = std::max(batch_max, t);
    }
    REQUIRE_TRUE(prev_max < batch_min);
    prev_max = batch_max;
  }
  detail << "10000 consecutive batches strictly ordered";
}

// ---- 9. line protocol encoding ----------------------------------------------
void criterion_line_protocol(std::ostringstream& detail) {
  const auto cfg = table1_config();
  const auto schema = derive_schema(cfg);
  ClientWorkload wl(cfg, schema, {0, 5});
  const Batch batch = wl.next_batch();
  const auto text = encode_line_protocol(batch, schema, cfg.data_type);

  std::istringstream in(text);
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    const auto parsed = lp_checker::parse_line(line);
    const auto& record = batch.records[i];
    REQUIRE_TRUE(parsed.measurement == schema.groups[schema.group_of(record.device)]);
    REQUIRE_TRUE(parsed.tags.at("device") == schema.devices[record.device]);
    REQUIRE_TRUE(parsed.timestamp_ns.has_value());
    REQUIRE_TRUE(*parsed.timestamp_ns == record.timestamp * 1000000);
    REQUIRE_TRUE(parsed.fields.size() == static_cast<std::size_t>(cfg.sensor_number));
    for (int s = 0; s < cfg.sensor_number; ++s) {
      REQUIRE_TRUE(parsed.fields[s].first == schema.sensors[s]);
    }
    ++i;
  }
  REQUIRE_TRUE(i == batch.records.size());
  detail << i << " lines parsed and round-tripped";
}

// ---- 10. monitor cadence ----------------------------------------------------
void criterion_monitor_cadence(std::ostringstream& detail) {
  std::mutex mu;
  std::vector<MonitorSample> samples;
  Monitor monitor(1000, [&](const MonitorSample& s) {
    std::lock_guard lock(mu);
    samples.push_back(s);
  });
  monitor.start();
  std::this_thread::sleep_for(std::chrono::seconds(10));
  monitor.stop();

  std::lock_guard lock(mu);
  std::size_t valid = 0;
  for (const auto& s : samples) valid += s.valid;
  REQUIRE_TRUE(valid >= 9);
  REQUIRE_TRUE(valid <= 11);
  for (std::size_t i = 1; i < samples.size(); ++i)
    REQUIRE_TRUE(samples[i].wall_ms > samples[i - 1].wall_ms);
  detail << valid << " valid samples in 10 s, strictly increasing";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "workload volume", 5.0, criterion_workload_volume},
      {2, "group-by-time row count", 10.0, criterion_group_by_count},
      {3, "out-of-order ratio", 5.0, criterion_out_of_order_ratio},
      {4, "poisson sampler", 10.0, criterion_poisson_sampler},
      {5, "metrics oracle", 5.0, criterion_metrics_oracle},
      {6, "query oracle equivalence", 60.0, criterion_query_oracle},
      {7, "determinism", 10.0, criterion_determinism},
      {8, "batch-local ordering", 5.0, criterion_batch_local_order},
      {9, "line protocol encoding", 1.0, criterion_line_protocol},
      {10, "monitor cadence", 15.0, criterion_monitor_cadence},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    std::string error;
    try {
      c.body(detail);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (error.empty() && elapsed > c.budget_seconds) {
      std::ostringstream msg;
      msg << "exceeded budget of " << c.budget_seconds << " s";
      error = msg.str();
    }
    if (error.empty()) {
      std::printf("PASS  criterion %2d  %-28s (%5.2fs)  %s\n", c.number, c.name.c_str(), elapsed,
                  detail.str().c_str());
    } else {
      ++failures;
      std::printf("FAIL  criterion %2d  %-28s (%5.2fs)  %s\n", c.number, c.name.c_str(), elapsed,
                  error.c_str());
    }
  }
  return failures;
}
