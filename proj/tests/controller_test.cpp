// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include <atomic>

#include "doctest.h"
#include "tsbench/controller.hpp"
#include "tsbench/reference_adapter.hpp"
#include "tsbench/sqlite_adapter.hpp"

using namespace tsbench;

namespace {

Config table_config() {
  auto cfg = parse_config("", MandatoryKeys::kOptional);
  cfg.seed = 20180101;
  cfg.monitor_interval_ms = 0;  // keep unit tests quick
  return cfg;
}

struct SharedReference {
  std::shared_ptr<ReferenceStore> store = std::make_shared<ReferenceStore>();
  AdapterFactory factory = [this] { return std::make_unique<ReferenceAdapter>(store); };
};

// Wraps the reference adapter and fails every n-th insert.
class FlakyAdapter : public Adapter {
 public:
  FlakyAdapter(std::unique_ptr<Adapter> inner, std::shared_ptr<std::atomic<int>> counter, int n)
      : inner_(std::move(inner)), counter_(std::move(counter)), n_(n) {}

  void init_schema(const Schema& s) override { inner_->init_schema(s); }
  void cleanup() override { inner_->cleanup(); }
  double insert_batch(const Batch& b) override {
    if (++*counter_ % n_ == 0) throw AdapterError("synthetic failure");
    return inner_->insert_batch(b);
  }
  std::pair<RowSet, double> execute_query(const QueryDescriptor& q) override {
    return inner_->execute_query(q);
  }
  std::optional<std::uint64_t> used_space() override { return inner_->used_space(); }
  void close() override { inner_->close(); }

 private:
  std::unique_ptr<Adapter> inner_;
  std::shared_ptr<std::atomic<int>> counter_;
  int n_;
};

RowSet full_scan(const SharedReference& ref, const Config& cfg, const Schema& schema) {
  QueryDescriptor q;
  q.qtype = 2;
  for (int d = 0; d < cfg.device_number; ++d) q.devices.push_back(d);
  for (int s = 0; s < cfg.sensor_number; ++s) q.sensors.push_back(s);
  q.start_ms = 0;
  q.span_ms = cfg.resolved_data_span_ms();
  return ref.store->execute(q, schema);
}

}  // namespace

TEST_CASE("the example ingestion run issues 60 ops and stores 18000 points") {
  const auto cfg = table_config();
  SharedReference ref;
  const auto result = run_ingestion_test(cfg, ref.factory);

  REQUIRE(result.stats.count("ingest"));
  CHECK(result.stats.at("ingest").n == 60);  // 10 devices x 6 epochs
  CHECK(result.operations.size() == 60);
  CHECK(result.failures == 0);
  CHECK(result.total_points == 18000);
  CHECK(ref.store->point_count() == 18000);
  CHECK(result.throughput_pps.has_value());
  CHECK(result.wall_seconds > 0.0);

  // per-client sequencing: ops sorted by (client, seq), seq dense from 0
  int expect_client = 0;
  std::int64_t expect_seq = 0;
  for (const auto& op : result.operations) {
    if (op.client_id != expect_client) {
      expect_client = op.client_id;
      expect_seq = 0;
    }
    CHECK(op.seq == expect_seq++);
    CHECK(op.points == 300);
    CHECK(op.cost_ms >= 0.0);
  }
}

TEST_CASE("one client stores the same data as five clients") {
  auto cfg1 = table_config();
  cfg1.client_number = 1;
  SharedReference ref1;
  run_ingestion_test(cfg1, ref1.factory);

  auto cfg5 = table_config();
  SharedReference ref5;
  run_ingestion_test(cfg5, ref5.factory);

  const auto schema = derive_schema(cfg1);
  CHECK(ref1.store->point_count() == ref5.store->point_count());
  CHECK(rows_equivalent(full_scan(ref1, cfg1, schema), full_scan(ref5, cfg5, schema)));
}

TEST_CASE("cleanup disabled keeps stored points stable across reruns") {
  const auto cfg = table_config();
  SharedReference ref;
  run_ingestion_test(cfg, ref.factory);
  const auto first = ref.store->point_count();

  ControllerOptions opts;
  opts.do_cleanup = false;
  run_ingestion_test(cfg, ref.factory, opts);
  CHECK(ref.store->point_count() == first);  // last write wins on identical keys

  // with cleanup the store is rebuilt from scratch
  run_ingestion_test(cfg, ref.factory);
  CHECK(ref.store->point_count() == first);
}

TEST_CASE("failed operations are recorded and excluded from the stats") {
  const auto cfg = table_config();
  SharedReference ref;
  auto counter = std::make_shared<std::atomic<int>>(0);
  AdapterFactory flaky = [&] {
    return std::make_unique<FlakyAdapter>(ref.factory(), counter, 10);
  };

  const auto result = run_ingestion_test(cfg, flaky);
  CHECK(result.operations.size() == 60);  // recorded op count = configured count
  CHECK(result.failures == 6);
  CHECK(result.stats.at("ingest").n == 54);
  CHECK(result.total_points == 54 * 300);
  for (const auto& op : result.operations) {
    if (!op.success) CHECK(op.error == "synthetic failure");
  }
}

TEST_CASE("the example query run issues 200 group-by queries of 40 rows each") {
  auto ingest_cfg = table_config();
  SharedReference ref;
  run_ingestion_test(ingest_cfg, ref.factory);

  auto query_cfg = table_config();
  query_cfg.client_number = 2;
  query_cfg.epoch = 100;
  query_cfg.data_span_ms = ingest_cfg.resolved_data_span_ms();

  const auto result = run_query_test(query_cfg, ref.factory);
  REQUIRE(result.stats.count("Q10"));
  CHECK(result.stats.at("Q10").n == 200);
  CHECK(result.operations.size() == 200);
  for (const auto& op : result.operations) CHECK(op.points == 40);
  CHECK(result.total_points == 200 * 40);
  CHECK_FALSE(result.throughput_pps.has_value());
}

TEST_CASE("a zero-epoch query run yields empty stats without errors") {
  auto cfg = table_config();
  cfg.epoch = 0;
  cfg.data_span_ms = 3000000;
  SharedReference ref;
  const auto result = run_query_test(cfg, ref.factory);
  CHECK(result.operations.empty());
  CHECK(result.stats.empty());
  CHECK(result.failures == 0);
}

TEST_CASE("concurrent workers share one sqlite backend safely") {
  auto cfg = table_config();
  cfg.adapter = "sqlite";
  const auto factory = make_adapter_factory(cfg);

  const auto ingest = run_ingestion_test(cfg, factory);
  CHECK(ingest.failures == 0);
  CHECK(ingest.total_points == 18000);

  auto qcfg = cfg;
  qcfg.query_type = 2;
  qcfg.epoch = 4;
  qcfg.data_span_ms = cfg.resolved_data_span_ms();
  const auto queries = run_query_test(qcfg, factory);
  CHECK(queries.failures == 0);
  CHECK(queries.stats.at("Q2").n == 20);
  for (const auto& op : queries.operations) {
    // 10-minute window at 5 s steps: 120 points x 2 devices x 2 sensors
    CHECK(op.points == 480);
  }
}

TEST_CASE("monitor samples are collected while a test runs") {
  auto cfg = table_config();
  cfg.monitor_interval_ms = 100;
  cfg.epoch = 60;  // stretch the run so at least one sample lands
  SharedReference ref;
  const auto result = run_ingestion_test(cfg, ref.factory);
  // Sampling ran; short runs may still capture nothing on a loaded box.
  for (std::size_t i = 1; i < result.monitor_samples.size(); ++i) {
    CHECK(result.monitor_samples[i].wall_ms > result.monitor_samples[i - 1].wall_ms);
  }
}
