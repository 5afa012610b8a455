// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/controller.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <iostream>
#include <mutex>
#include <thread>

#include "tsbench/query.hpp"

namespace tsbench {

namespace {

using Clock = std::chrono::steady_clock;

double wall_now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

class ResultSink {
 public:
  explicit ResultSink(int progress_every) : progress_every_(progress_every) {}

  void push(OperationRecord rec) {
    {
      std::lock_guard lock(mu_);
      records_.push_back(std::move(rec));
    }
    const auto n = ++count_;
    if (progress_every_ > 0 && n % progress_every_ == 0) {
      std::cerr << "progress: " << n << " ops completed\n";
    }
  }

  std::vector<OperationRecord> take() {
    std::lock_guard lock(mu_);
    return std::move(records_);
  }

 private:
  std::mutex mu_;
  std::vector<OperationRecord> records_;
  std::atomic<std::uint64_t> count_{0};
  int progress_every_;
};

struct RunContext {
  Schema schema;
  std::unique_ptr<Adapter> coordinator;
  std::vector<MonitorSample> monitor_samples;
  std::vector<std::uint64_t> space_samples;
  std::mutex monitor_mu;
};

// Shared scaffolding of both test kinds: coordinator adapter, optional env
// init, worker threads behind a start barrier, monitor thread, metric roll-up.
TestResult run_test(const Config& cfg, const AdapterFactory& factory,
                    const ControllerOptions& options, bool is_ingestion,
                    const std::function<void(int, Adapter&, ResultSink&)>& worker_body) {
  TestResult result;
  result.config = cfg;

  RunContext ctx{derive_schema(cfg), nullptr, {}, {}, {}};
  ctx.coordinator = factory();
  if (is_ingestion && options.do_cleanup) ctx.coordinator->cleanup();
  ctx.coordinator->init_schema(ctx.schema);

  if (auto space = ctx.coordinator->used_space()) ctx.space_samples.push_back(*space);

  std::unique_ptr<Monitor> monitor;
  if (cfg.monitor_interval_ms > 0) {
    auto space_adapter = std::shared_ptr<Adapter>(factory());
    monitor = std::make_unique<Monitor>(
        cfg.monitor_interval_ms,
        [&ctx](const MonitorSample& s) {
          std::lock_guard lock(ctx.monitor_mu);
          ctx.monitor_samples.push_back(s);
          if (s.data_dir_used) ctx.space_samples.push_back(*s.data_dir_used);
        },
        [space_adapter] { return space_adapter->used_space(); });
    monitor->start();
  }

  ResultSink sink(options.progress_every);
  const int workers = cfg.client_number;
  std::barrier start_barrier(workers + 1);

  std::vector<std::unique_ptr<Adapter>> adapters;
  adapters.reserve(workers);
  for (int c = 0; c < workers; ++c) {
    adapters.push_back(factory());
    // The coordinator did the one-time env init; per-worker schema setup is
    // idempotent (CREATE IF NOT EXISTS semantics in every adapter).
    adapters.back()->init_schema(ctx.schema);
  }

  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int c = 0; c < workers; ++c) {
    threads.emplace_back([&, c] {
      start_barrier.arrive_and_wait();
      worker_body(c, *adapters[c], sink);
      adapters[c]->close();
    });
  }

  start_barrier.arrive_and_wait();
  const auto t0 = Clock::now();
  for (auto& t : threads) t.join();
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  if (monitor) monitor->stop();
  if (auto space = ctx.coordinator->used_space()) ctx.space_samples.push_back(*space);
  ctx.coordinator->close();

  result.monitor_samples = std::move(ctx.monitor_samples);
  result.space_bytes = space_consumption(ctx.space_samples);

  result.operations = sink.take();
  std::sort(result.operations.begin(), result.operations.end(),
            [](const OperationRecord& a, const OperationRecord& b) {
              if (a.client_id != b.client_id) return a.client_id < b.client_id;
              return a.seq < b.seq;
            });

  std::map<std::string, std::vector<double>> costs;
  std::vector<double> per_client_cost(workers, 0.0);
  for (const auto& op : result.operations) {
    if (!op.success) {
      ++result.failures;
      continue;
    }
    costs[op.op].push_back(op.cost_ms);
    per_client_cost[op.client_id] += op.cost_ms;
    result.total_points += op.points;
  }
  for (const auto& [kind, samples] : costs) result.stats[kind] = summarize(samples);

  if (is_ingestion && result.total_points > 0) {
    const double max_ms = *std::max_element(per_client_cost.begin(), per_client_cost.end());
    if (max_ms > 0.0) result.throughput_pps = throughput(per_client_cost, result.total_points);
  }
  return result;
}

}  // namespace

TestResult run_ingestion_test(const Config& cfg, const AdapterFactory& factory,
                              const ControllerOptions& options) {
  const auto partition = partition_devices(cfg);
  const Schema schema = derive_schema(cfg);

  return run_test(cfg, factory, options, true,
                  [&](int client, Adapter& adapter, ResultSink& sink) {
                    ClientWorkload workload(cfg, schema, partition[client]);
                    std::int64_t seq = 0;
                    while (!workload.done()) {
                      const Batch batch = workload.next_batch();
                      OperationRecord rec;
                      rec.client_id = client;
                      rec.op = "ingest";
                      rec.seq = seq++;
                      rec.start_wall_ms = wall_now_ms();
                      rec.points = points_per_batch(cfg);
                      try {
                        rec.cost_ms = adapter.insert_batch(batch);
                      } catch (const std::exception& e) {
                        rec.success = false;
                        rec.points = 0;
                        rec.error = e.what();
                      }
                      sink.push(std::move(rec));
                    }
                  });
}

TestResult run_query_test(const Config& cfg, const AdapterFactory& factory,
                          const ControllerOptions& options) {
  const Schema schema = derive_schema(cfg);

  return run_test(cfg, factory, options, false,
                  [&](int client, Adapter& adapter, ResultSink& sink) {
                    QueryGenerator gen(cfg, schema, client);
                    for (int i = 0; i < cfg.epoch; ++i) {
                      const QueryDescriptor q = gen.next();
                      OperationRecord rec;
                      rec.client_id = client;
                      rec.op = "Q" + std::to_string(q.qtype);
                      rec.seq = i;
                      rec.start_wall_ms = wall_now_ms();
                      try {
                        auto [rows, cost] = adapter.execute_query(q);
                        rec.cost_ms = cost;
                        rec.points = rows.size();
                      } catch (const std::exception& e) {
                        rec.success = false;
                        rec.error = e.what();
                      }
                      sink.push(std::move(rec));
                    }
                  });
}

}  // namespace tsbench
