// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

namespace tsbench {

// One resource snapshot. Rates are deltas against the previous snapshot;
// fields a probe cannot provide stay unset rather than zero.
struct MonitorSample {
  std::int64_t wall_ms = 0;  // epoch milliseconds
  bool valid = true;
  std::optional<double> cpu_usage;              // fraction of all cores, 0..1
  std::optional<std::uint64_t> mem_used;        // bytes
  std::optional<std::uint64_t> process_mem;     // RSS bytes of this process
  std::optional<double> disk_tps;               // transfers per second
  std::optional<double> disk_read_bps;
  std::optional<double> disk_write_bps;
  std::optional<double> net_recv_bps;
  std::optional<double> net_send_bps;
  std::optional<std::uint64_t> data_dir_used;   // bytes, when a probe is wired
};

// CSV line in MonitorSample field order; also the remote-probe wire format.
std::string sample_to_csv(const MonitorSample& s);
MonitorSample sample_from_csv(std::string_view line);
std::string monitor_csv_header();

// /proc-backed source. The first sample after construction has no rate fields
// (no prior snapshot); read failures yield samples marked invalid.
class SystemProbe {
 public:
  SystemProbe();
  ~SystemProbe();
  MonitorSample sample();

 private:
  struct Snapshot;
  std::unique_ptr<Snapshot> prev_;
};

// Periodic sampler thread. Sink exceptions are logged and sampling continues.
class Monitor {
 public:
  using Sink = std::function<void(const MonitorSample&)>;
  using SpaceProbe = std::function<std::optional<std::uint64_t>()>;

  Monitor(std::int64_t interval_ms, Sink sink, SpaceProbe space_probe = {});
  ~Monitor();

  void start();
  void stop();

 private:
  void run();

  std::int64_t interval_ms_;
  Sink sink_;
  SpaceProbe space_probe_;
  SystemProbe probe_;
  std::thread thread_;
  std::mutex mu_;
  std::condition_variable cv_;
  bool stopping_ = false;
  std::int64_t last_wall_ms_ = 0;
};

}  // namespace tsbench
