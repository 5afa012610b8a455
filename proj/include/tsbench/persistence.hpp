// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "tsbench/controller.hpp"

namespace tsbench {

struct PhaseResult {
  std::string phase;  // "ingest" | "query"
  TestResult result;
};

// One executed test instance and where it was persisted.
struct RunRecord {
  std::string run_id;
  std::string mode;  // "ingest" | "query" | "both"
  Config config;
  std::vector<PhaseResult> phases;
  std::filesystem::path dir;
};

std::string make_run_id(const Config& cfg);

// Writes <out_root>/<run_id>/{config.properties, summary.csv, operations.csv,
// monitor.csv} (+ export.sql when sql_export). Throws std::runtime_error with
// the path on I/O failure.
RunRecord persist_run(const Config& cfg, const std::string& mode,
                      const std::vector<PhaseResult>& phases,
                      const std::filesystem::path& out_root, bool sql_export = false);

// Fixed, documented headers.
std::string summary_csv_header();
std::string operations_csv_header();

// Routine file: one directive per line, "SET KEY=VALUE" or
// "RUN ingest|query|both", '#' comments. The whole file is validated (syntax,
// known keys, parseable values, config invariants at each RUN point) before
// anything executes.
struct RoutineStep {
  enum class Kind { kSet, kRun };
  Kind kind;
  std::string key;    // kSet
  std::string value;  // kSet
  std::string mode;   // kRun
  int line = 0;
};

std::vector<RoutineStep> parse_routine(std::string_view text);

using RunExecutor = std::function<RunRecord(const std::string& mode, const Config& cfg)>;

// Applies SET directives to the working key set and executes each RUN with the
// executor. After a run whose mode ingests, DATA_SPAN of the working config is
// set to that run's ingested span so later query runs target the real range.
std::vector<RunRecord> run_routine(const std::string& base_properties, std::string_view routine,
                                   const RunExecutor& executor);

}  // namespace tsbench
