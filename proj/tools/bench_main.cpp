// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "tsbench/adapter.hpp"
#include "tsbench/controller.hpp"
#include "tsbench/persistence.hpp"
#include "tsbench/query.hpp"
#include "tsbench/workload.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitAdapterError = 2;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw tsbench::ConfigError("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_summary(const tsbench::RunRecord& record) {
  std::cout << "run " << record.run_id << " (" << record.mode << ") -> " << record.dir.string()
            << "\n";
  for (const auto& phase : record.phases) {
    const auto& r = phase.result;
    for (const auto& [kind, s] : r.stats) {
      std::printf("  %-6s %-7s n=%-6zu mean=%.3fms mid=%.3fms p50=%.3fms p99=%.3fms max=%.3fms\n",
                  phase.phase.c_str(), kind.c_str(), s.n, s.mean, s.middle_average, s.p50, s.p99,
                  s.max);
    }
    if (r.throughput_pps)
      std::printf("  %-6s throughput=%.0f points/s (%llu points, %.2fs wall)\n",
                  phase.phase.c_str(), *r.throughput_pps,
                  static_cast<unsigned long long>(r.total_points), r.wall_seconds);
    if (r.space_bytes)
      std::printf("  %-6s space=%llu bytes\n", phase.phase.c_str(),
                  static_cast<unsigned long long>(*r.space_bytes));
    if (r.failures > 0)
      std::printf("  %-6s FAILURES=%llu\n", phase.phase.c_str(),
                  static_cast<unsigned long long>(r.failures));
  }
}

struct CliOptions {
  std::string config_path;
  std::string routine_path;
  std::string mode = "both";
  std::string out_dir = "results";
  std::string dump_workload_path;
  std::string dump_queries_path;
  bool no_cleanup = false;
  bool sql_export = false;
  int progress = 0;
};

// One backend per adapter target for the whole invocation, so routine
// sequences like "RUN ingest / RUN query" hit the same store even for the
// in-process adapters.
class FactoryCache {
 public:
  tsbench::AdapterFactory& get(const tsbench::Config& cfg) {
    const std::string key = cfg.adapter + "|" + cfg.adapter_url + "|" + cfg.adapter_db;
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, tsbench::make_adapter_factory(cfg)).first;
    }
    return it->second;
  }

 private:
  std::map<std::string, tsbench::AdapterFactory> cache_;
};

tsbench::RunRecord execute_run(const std::string& mode, const tsbench::Config& cfg,
                               const CliOptions& opts, FactoryCache& factories) {
  auto& factory = factories.get(cfg);
  tsbench::ControllerOptions copts;
  copts.do_cleanup = !opts.no_cleanup;
  copts.progress_every = opts.progress;

  std::vector<tsbench::PhaseResult> phases;
  tsbench::Config query_cfg = cfg;
  if (mode == "ingest" || mode == "both") {
    phases.push_back({"ingest", tsbench::run_ingestion_test(cfg, factory, copts)});
    if (!query_cfg.data_span_ms) {
      query_cfg.data_span_ms =
          static_cast<std::int64_t>(cfg.batch_size) * cfg.epoch * cfg.point_step_ms;
    }
  }
  if (mode == "query" || mode == "both") {
    phases.push_back({"query", tsbench::run_query_test(query_cfg, factory, copts)});
  }
  auto record = tsbench::persist_run(cfg, mode, phases, opts.out_dir, opts.sql_export);
  print_summary(record);
  return record;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time series database benchmark harness"};
  CliOptions opts;

  app.add_option("--config", opts.config_path, "Parameter file (KEY=VALUE lines)")
      ->required();
  app.add_option("--routine", opts.routine_path,
                 "Routine file of SET/RUN directives executed sequentially");
  app.add_option("--mode", opts.mode, "Test to run: ingest, query or both")
      ->check(CLI::IsMember({"ingest", "query", "both"}));
  app.add_option("--out", opts.out_dir, "Output directory for run records");
  app.add_flag("--no-cleanup", opts.no_cleanup, "Keep existing data before ingestion");
  app.add_option("--dump-workload", opts.dump_workload_path,
                 "Write the generated ingestion records to this file and exit");
  app.add_option("--dump-queries", opts.dump_queries_path,
                 "Write the generated query descriptors to this file and exit");
  app.add_option("--progress", opts.progress, "Progress line to stderr every N operations");
  app.add_flag("--sql-export", opts.sql_export, "Also emit export.sql per run");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string properties = read_file(opts.config_path);

    if (!opts.dump_workload_path.empty() || !opts.dump_queries_path.empty()) {
      const auto cfg = tsbench::parse_config(properties);
      const auto schema = tsbench::derive_schema(cfg);
      if (!opts.dump_workload_path.empty()) {
        std::ofstream out(opts.dump_workload_path);
        if (!out) throw tsbench::ConfigError("cannot write " + opts.dump_workload_path);
        tsbench::dump_workload(cfg, schema, out);
        std::cout << "workload dump -> " << opts.dump_workload_path << "\n";
      }
      if (!opts.dump_queries_path.empty()) {
        std::ofstream out(opts.dump_queries_path);
        if (!out) throw tsbench::ConfigError("cannot write " + opts.dump_queries_path);
        tsbench::dump_queries(cfg, schema, out);
        std::cout << "query dump -> " << opts.dump_queries_path << "\n";
      }
      return kExitOk;
    }

    FactoryCache factories;
    if (!opts.routine_path.empty()) {
      const std::string routine = read_file(opts.routine_path);
      (void)tsbench::parse_config(properties);  // fail fast on the base config
      tsbench::run_routine(properties, routine,
                           [&](const std::string& mode, const tsbench::Config& cfg) {
                             return execute_run(mode, cfg, opts, factories);
                           });
      return kExitOk;
    }

    const auto cfg = tsbench::parse_config(properties);
    execute_run(opts.mode, cfg, opts, factories);
    return kExitOk;
  } catch (const tsbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const tsbench::AdapterError& e) {
    std::cerr << "adapter error: " << e.what() << "\n";
    return kExitAdapterError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAdapterError;
  }
}
