// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsbench/rng.hpp"
#include "tsbench/schema.hpp"

namespace tsbench {

// Database-agnostic instance of one of the ten query types. Optional fields
// are present exactly when the type requires them:
//   start_ms           Q1 (exact point) and the window queries Q2/Q4/Q5/Q6/Q8/Q10
//   span_ms            Q2/Q4/Q5/Q6/Q8/Q10 (half-open window [start, start+span))
//   value_filter       Q4/Q5/Q7/Q8 (conjunctive over all selected sensors)
//   agg                Q6/Q7/Q8/Q10
//   limit              Q3/Q5
//   interval_ms        Q10
struct QueryDescriptor {
  int qtype = 1;
  std::vector<int> devices;  // ascending indices
  std::vector<int> sensors;  // ascending indices
  std::optional<std::int64_t> start_ms;
  std::optional<std::int64_t> span_ms;
  std::optional<ValueFilter> value_filter;
  std::optional<AggFun> agg;
  std::optional<int> limit;
  std::optional<std::int64_t> interval_ms;

  bool operator==(const QueryDescriptor&) const = default;

  std::int64_t end_ms() const { return *start_ms + *span_ms; }
};

// Seeded per-client query stream. Devices and sensors are drawn uniformly
// without replacement; window starts are uniform over the data span, aligned
// to POINT_STEP (TIME_INTERVAL for Q10).
class QueryGenerator {
 public:
  QueryGenerator(const Config& cfg, const Schema& schema, int client_id);

  QueryDescriptor next();

 private:
  Config cfg_;
  Schema schema_;
  Rng stream_;
  std::int64_t data_span_;
};

// devices * sensors * (span / interval); Q10 only, span must divide evenly.
std::int64_t expected_group_by_points(const QueryDescriptor& d);

// One-line canonical text, parseable back; used for golden files.
std::string descriptor_to_line(const QueryDescriptor& d, const Schema& schema);
QueryDescriptor descriptor_from_line(std::string_view line, const Schema& schema);

// Serial replay of every client's query stream, one line per query.
void dump_queries(const Config& cfg, const Schema& schema, std::ostream& out);

bool value_passes(const ValueFilter& f, double v);

}  // namespace tsbench
