// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/persistence.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tsbench/rng.hpp"

namespace tsbench {

namespace {

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::ofstream open_or_throw(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

void write_summary(const std::filesystem::path& p, const std::vector<PhaseResult>& phases) {
  auto out = open_or_throw(p);
  out << summary_csv_header() << "\n";
  for (const auto& phase : phases) {
    const auto& r = phase.result;
    for (const auto& [kind, s] : r.stats) {
      out << phase.phase << ',' << kind << ',' << s.n << ',' << r.failures << ','
          << fixed3(s.min) << ',' << fixed3(s.max) << ',' << fixed3(s.mean) << ','
          << fixed3(s.middle_average) << ',' << fixed3(s.p1) << ',' << fixed3(s.p5) << ','
          << fixed3(s.p50) << ',' << fixed3(s.p90) << ',' << fixed3(s.p95) << ','
          << fixed3(s.p99) << ',' << r.total_points << ',';
      if (kind == "ingest" && r.throughput_pps) out << fixed3(*r.throughput_pps);
      out << ',';
      if (r.space_bytes) out << *r.space_bytes;
      out << ',' << fixed3(r.wall_seconds) << "\n";
    }
  }
}

void write_operations(const std::filesystem::path& p, const std::vector<PhaseResult>& phases) {
  auto out = open_or_throw(p);
  out << operations_csv_header() << "\n";
  for (const auto& phase : phases) {
    for (const auto& op : phase.result.operations) {
      out << phase.phase << ',' << op.op << ',' << op.client_id << ',' << op.seq << ','
          << fixed3(op.start_wall_ms) << ',' << fixed3(op.cost_ms) << ',' << op.points << ','
          << (op.success ? 1 : 0) << ',' << csv_escape(op.error) << "\n";
    }
  }
}

void write_monitor(const std::filesystem::path& p, const std::vector<PhaseResult>& phases) {
  auto out = open_or_throw(p);
  out << monitor_csv_header() << "\n";
  for (const auto& phase : phases) {
    for (const auto& s : phase.result.monitor_samples) out << sample_to_csv(s) << "\n";
  }
}

void write_sql_export(const std::filesystem::path& p, const std::string& run_id,
                      const std::vector<PhaseResult>& phases) {
  auto out = open_or_throw(p);
  out << "CREATE TABLE IF NOT EXISTS run_summary (run_id TEXT, phase TEXT, op TEXT, n BIGINT, "
         "failures BIGINT, min_ms DOUBLE PRECISION, max_ms DOUBLE PRECISION, mean_ms DOUBLE "
         "PRECISION, middle_avg_ms DOUBLE PRECISION, p1_ms DOUBLE PRECISION, p5_ms DOUBLE "
         "PRECISION, p50_ms DOUBLE PRECISION, p90_ms DOUBLE PRECISION, p95_ms DOUBLE PRECISION, "
         "p99_ms DOUBLE PRECISION, total_points BIGINT, throughput_pps DOUBLE PRECISION, "
         "space_bytes BIGINT, wall_s DOUBLE PRECISION);\n";
  out << "CREATE TABLE IF NOT EXISTS run_operations (run_id TEXT, phase TEXT, op TEXT, client_id "
         "INTEGER, seq BIGINT, start_wall_ms DOUBLE PRECISION, cost_ms DOUBLE PRECISION, points "
         "BIGINT, success INTEGER, error TEXT);\n";
  for (const auto& phase : phases) {
    const auto& r = phase.result;
    for (const auto& [kind, s] : r.stats) {
      out << "INSERT INTO run_summary VALUES ('" << run_id << "','" << phase.phase << "','"
          << kind << "'," << s.n << ',' << r.failures << ',' << fixed3(s.min) << ','
          << fixed3(s.max) << ',' << fixed3(s.mean) << ',' << fixed3(s.middle_average) << ','
          << fixed3(s.p1) << ',' << fixed3(s.p5) << ',' << fixed3(s.p50) << ',' << fixed3(s.p90)
          << ',' << fixed3(s.p95) << ',' << fixed3(s.p99) << ',' << r.total_points << ','
          << (kind == "ingest" && r.throughput_pps ? fixed3(*r.throughput_pps) : "NULL") << ','
          << (r.space_bytes ? std::to_string(*r.space_bytes) : "NULL") << ','
          << fixed3(r.wall_seconds) << ");\n";
    }
    for (const auto& op : r.operations) {
      std::string err = op.error;
      std::string escaped;
      for (char c : err) {
        if (c == '\'') escaped += "''";
        else escaped.push_back(c);
      }
      out << "INSERT INTO run_operations VALUES ('" << run_id << "','" << phase.phase << "','"
          << op.op << "'," << op.client_id << ',' << op.seq << ',' << fixed3(op.start_wall_ms)
          << ',' << fixed3(op.cost_ms) << ',' << op.points << ',' << (op.success ? 1 : 0) << ",'"
          << escaped << "');\n";
    }
  }
}

}  // namespace

std::string summary_csv_header() {
  return "phase,op,n,failures,min_ms,max_ms,mean_ms,middle_avg_ms,p1_ms,p5_ms,p50_ms,p90_ms,"
         "p95_ms,p99_ms,total_points,throughput_pps,space_bytes,wall_s";
}

std::string operations_csv_header() {
  return "phase,op,client_id,seq,start_wall_ms,cost_ms,points,success,error";
}

std::string make_run_id(const Config& cfg) {
  static std::atomic<std::uint64_t> counter{0};
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y%m%dT%H%M%S", &tm_utc);
  char seed_hex[24];
  std::snprintf(seed_hex, sizeof(seed_hex), "%08llx",
                static_cast<unsigned long long>(mix64(cfg.seed) & 0xffffffffULL));
  return std::string(stamp) + "-" + seed_hex + "-" + std::to_string(counter++);
}

RunRecord persist_run(const Config& cfg, const std::string& mode,
                      const std::vector<PhaseResult>& phases,
                      const std::filesystem::path& out_root, bool sql_export) {
  RunRecord record;
  record.run_id = make_run_id(cfg);
  record.mode = mode;
  record.config = cfg;
  record.phases = phases;
  record.dir = out_root / record.run_id;

  std::error_code ec;
  std::filesystem::create_directories(record.dir, ec);
  if (ec) throw std::runtime_error("cannot create " + record.dir.string() + ": " + ec.message());

  open_or_throw(record.dir / "config.properties") << to_properties(cfg);
  write_summary(record.dir / "summary.csv", phases);
  write_operations(record.dir / "operations.csv", phases);
  write_monitor(record.dir / "monitor.csv", phases);
  if (sql_export) write_sql_export(record.dir / "export.sql", record.run_id, phases);
  return record;
}

std::vector<RoutineStep> parse_routine(std::string_view text) {
  std::vector<RoutineStep> steps;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string line(nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos));
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::string word;
    if (in >> word) {
      RoutineStep step;
      step.line = line_no;
      if (word == "SET") {
        std::string rest;
        std::getline(in, rest);
        auto eq = rest.find('=');
        if (eq == std::string::npos)
          throw ConfigError("routine line " + std::to_string(line_no) + ": SET needs KEY=VALUE");
        step.kind = RoutineStep::Kind::kSet;
        auto trim = [](std::string s) {
          const auto b = s.find_first_not_of(" \t\r");
          const auto e = s.find_last_not_of(" \t\r");
          return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        step.key = trim(rest.substr(0, eq));
        step.value = trim(rest.substr(eq + 1));
        if (!is_known_config_key(step.key))
          throw ConfigError("routine line " + std::to_string(line_no) + ": unknown key " + step.key);
      } else if (word == "RUN") {
        std::string mode;
        if (!(in >> mode) || (mode != "ingest" && mode != "query" && mode != "both"))
          throw ConfigError("routine line " + std::to_string(line_no) +
                            ": RUN needs ingest, query or both");
        step.kind = RoutineStep::Kind::kRun;
        step.mode = mode;
      } else {
        throw ConfigError("routine line " + std::to_string(line_no) + ": unknown directive " + word);
      }
      steps.push_back(std::move(step));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return steps;
}

std::vector<RunRecord> run_routine(const std::string& base_properties, std::string_view routine,
                                   const RunExecutor& executor) {
  const auto steps = parse_routine(routine);

  auto carry_span = [](std::vector<std::pair<std::string, std::string>>& pairs,
                       const Config& cfg) {
    // Later query runs target the span this run ingested.
    const std::int64_t span =
        static_cast<std::int64_t>(cfg.batch_size) * cfg.epoch * cfg.point_step_ms;
    if (span > 0) pairs.emplace_back("DATA_SPAN", std::to_string(span));
  };

  // Validate the whole sequence before executing anything: every SET must
  // parse and every RUN point must yield a valid config (with the DATA_SPAN
  // carry-over simulated).
  {
    auto pairs = parse_properties(base_properties);
    for (const auto& step : steps) {
      if (step.kind == RoutineStep::Kind::kSet) {
        pairs.emplace_back(step.key, step.value);
        continue;
      }
      try {
        const Config cfg = config_from_pairs(pairs, MandatoryKeys::kRequired);
        if (step.mode != "query") carry_span(pairs, cfg);
      } catch (const ConfigError& e) {
        throw ConfigError("routine line " + std::to_string(step.line) + ": " + e.what());
      }
    }
  }

  std::vector<RunRecord> records;
  auto pairs = parse_properties(base_properties);
  for (const auto& step : steps) {
    if (step.kind == RoutineStep::Kind::kSet) {
      pairs.emplace_back(step.key, step.value);
      continue;
    }
    Config cfg = config_from_pairs(pairs, MandatoryKeys::kRequired);
    records.push_back(executor(step.mode, cfg));
    if (step.mode != "query") carry_span(pairs, cfg);
  }
  return records;
}

}  // namespace tsbench
