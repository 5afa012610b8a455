// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/reference_adapter.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace tsbench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string agg_label(AggFun f, const std::string& sensor) {
  return to_string(f) + "(" + sensor + ")";
}

struct AggState {
  std::int64_t count = 0;
  double max = std::numeric_limits<double>::lowest();
  double min = std::numeric_limits<double>::max();
  double sum = 0.0;

  void add(const Value& v) {
    ++count;
    if (is_text(v)) return;  // TEXT supports count only
    const double d = value_as_double(v);
    max = std::max(max, d);
    min = std::min(min, d);
    sum += d;
  }

  Value result(AggFun f) const {
    switch (f) {
      case AggFun::kCount: return count;
      case AggFun::kMax: return max;
      case AggFun::kMin: return min;
      case AggFun::kAvg: return sum / static_cast<double>(count);
      case AggFun::kSum: return sum;
    }
    return 0.0;
  }
};

}  // namespace

void ReferenceStore::clear() {
  std::lock_guard lock(mu_);
  series_.clear();
}

void ReferenceStore::upsert(int device, int sensor, std::int64_t ts, Value v) {
  std::lock_guard lock(mu_);
  series_[{device, sensor}][ts] = std::move(v);
}

std::uint64_t ReferenceStore::point_count() const {
  std::lock_guard lock(mu_);
  std::uint64_t n = 0;
  for (const auto& [key, series] : series_) n += series.size();
  return n;
}

const ReferenceStore::Series* ReferenceStore::find_series(int device, int sensor) const {
  auto it = series_.find({device, sensor});
  return it == series_.end() ? nullptr : &it->second;
}

RowSet ReferenceStore::execute(const QueryDescriptor& q, const Schema& schema) const {
  std::lock_guard lock(mu_);
  return execute_locked(q, schema);
}

RowSet ReferenceStore::execute_locked(const QueryDescriptor& q, const Schema& schema) const {
  RowSet rows;

  // Record = one (device, timestamp) with every selected sensor present.
  // Value filters are conjunctive over the selected sensors of a record.
  auto device_records = [&](int device) {
    std::vector<std::pair<std::int64_t, std::vector<const Value*>>> records;
    const Series* first = find_series(device, q.sensors.empty() ? 0 : q.sensors.front());
    if (!first) return records;
    for (const auto& [ts, v0] : *first) {
      std::vector<const Value*> vals{&v0};
      bool complete = true;
      for (std::size_t i = 1; i < q.sensors.size(); ++i) {
        const Series* s = find_series(device, q.sensors[i]);
        auto it = s ? s->find(ts) : Series::const_iterator{};
        if (!s || it == s->end()) {
          complete = false;
          break;
        }
        vals.push_back(&it->second);
      }
      if (complete) records.emplace_back(ts, std::move(vals));
    }
    return records;
  };

  auto record_passes = [&](const std::vector<const Value*>& vals) {
    if (!q.value_filter) return true;
    return std::all_of(vals.begin(), vals.end(), [&](const Value* v) {
      return value_passes(*q.value_filter, value_as_double(*v));
    });
  };

  auto in_window = [&](std::int64_t ts) {
    if (!q.start_ms) return true;
    if (!q.span_ms) return ts == *q.start_ms;  // exact point
    return ts >= *q.start_ms && ts < q.end_ms();
  };

  auto emit_record = [&](int device, std::int64_t ts, const std::vector<const Value*>& vals) {
    for (std::size_t i = 0; i < q.sensors.size(); ++i) {
      rows.push_back({schema.devices[device], schema.sensors[q.sensors[i]], ts, *vals[i]});
    }
  };

  switch (q.qtype) {
    case 1:   // exact point, per series
    case 2: {  // half-open range scan, per series
      for (int device : q.devices) {
        for (int sensor : q.sensors) {
          const Series* s = find_series(device, sensor);
          if (!s) continue;
          for (auto it = s->lower_bound(*q.start_ms); it != s->end() && in_window(it->first);
               ++it) {
            rows.push_back({schema.devices[device], schema.sensors[sensor], it->first, it->second});
            if (!q.span_ms) break;  // exact point: at most one
          }
        }
      }
      break;
    }
    case 3:    // order by (time, device), limit N
    case 4:    // range + conjunctive value predicate
    case 5: {  // Q4 + limit
      std::vector<std::tuple<std::int64_t, int, std::vector<const Value*>>> all;
      for (int device : q.devices) {
        for (auto& [ts, vals] : device_records(device)) {
          if (!in_window(ts)) continue;
          if (!record_passes(vals)) continue;
          all.emplace_back(ts, device, std::move(vals));
        }
      }
      std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return schema.devices[std::get<1>(a)] < schema.devices[std::get<1>(b)];
      });
      if (q.limit && all.size() > static_cast<std::size_t>(*q.limit)) all.resize(*q.limit);
      for (const auto& [ts, device, vals] : all) emit_record(device, ts, vals);
      break;
    }
    case 6:    // aggregate with time filter, per series
    case 7:    // aggregate with value filter (conjunctive records)
    case 8: {  // both filters
      for (int device : q.devices) {
        std::vector<AggState> states(q.sensors.size());
        bool any = false;
        for (const auto& [ts, vals] : device_records(device)) {
          if (!in_window(ts)) continue;
          if (!record_passes(vals)) continue;
          any = true;
          for (std::size_t i = 0; i < q.sensors.size(); ++i)
            states[i].add(*vals[i]);
        }
        if (!any) continue;  // no group for devices without qualifying records
        for (std::size_t i = 0; i < q.sensors.size(); ++i) {
          rows.push_back({schema.devices[device], agg_label(*q.agg, schema.sensors[q.sensors[i]]),
                          0, states[i].result(*q.agg)});
        }
      }
      break;
    }
    case 9: {  // latest record per device
      for (int device : q.devices) {
        const auto records = device_records(device);
        if (records.empty()) continue;
        const auto& [ts, vals] = records.back();
        emit_record(device, ts, vals);
      }
      break;
    }
    case 10: {  // per-interval aggregation, empty groups omitted
      for (int device : q.devices) {
        for (std::size_t i = 0; i < q.sensors.size(); ++i) {
          const Series* s = find_series(device, q.sensors[i]);
          if (!s) continue;
          std::map<std::int64_t, AggState> buckets;
          for (auto it = s->lower_bound(*q.start_ms); it != s->end() && it->first < q.end_ms();
               ++it) {
            const std::int64_t bucket = (it->first / *q.interval_ms) * *q.interval_ms;
            buckets[bucket].add(it->second);
          }
          for (const auto& [bucket, state] : buckets) {
            rows.push_back({schema.devices[device],
                            agg_label(*q.agg, schema.sensors[q.sensors[i]]), bucket,
                            state.result(*q.agg)});
          }
        }
      }
      break;
    }
    default:
      break;
  }
  return rows;
}

RowSet ref_execute_query(const ReferenceStore& store, const QueryDescriptor& q,
                         const Schema& schema) {
  return store.execute(q, schema);
}

double ReferenceAdapter::insert_batch(const Batch& batch) {
  const auto t0 = Clock::now();
  for (const auto& r : batch.records) {
    for (std::size_t s = 0; s < r.values.size(); ++s) {
      store_->upsert(r.device, static_cast<int>(s), r.timestamp, r.values[s]);
    }
  }
  return ms_since(t0);
}

std::pair<RowSet, double> ReferenceAdapter::execute_query(const QueryDescriptor& q) {
  const auto t0 = Clock::now();
  RowSet rows = store_->execute(q, schema_);
  return {std::move(rows), ms_since(t0)};
}

}  // namespace tsbench
