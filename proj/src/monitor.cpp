// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/monitor.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <regex>
#include <sstream>
#include <vector>

namespace tsbench {

namespace {

std::int64_t wall_now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

struct CpuTimes {
  std::uint64_t total = 0;
  std::uint64_t idle = 0;
};

struct DiskTotals {
  std::uint64_t transfers = 0;
  std::uint64_t sectors_read = 0;
  std::uint64_t sectors_written = 0;
};

struct NetTotals {
  std::uint64_t recv = 0;
  std::uint64_t sent = 0;
};

bool read_cpu(CpuTimes& out) {
  std::ifstream in("/proc/stat");
  std::string label;
  if (!(in >> label) || label != "cpu") return false;
  std::uint64_t v;
  std::vector<std::uint64_t> fields;
  while (in >> v && fields.size() < 10) fields.push_back(v);
  if (fields.size() < 5) return false;
  out.total = std::accumulate(fields.begin(), fields.end(), std::uint64_t{0});
  out.idle = fields[3] + fields[4];  // idle + iowait
  return true;
}

bool read_mem(std::uint64_t& used) {
  std::ifstream in("/proc/meminfo");
  std::string key, unit;
  std::uint64_t kb = 0, total = 0, available = 0;
  bool have_total = false, have_avail = false;
  while (in >> key >> kb) {
    in >> std::ws;
    std::getline(in, unit);
    if (key == "MemTotal:") { total = kb; have_total = true; }
    if (key == "MemAvailable:") { available = kb; have_avail = true; }
    if (have_total && have_avail) break;
  }
  if (!have_total || !have_avail) return false;
  used = (total - available) * 1024;
  return true;
}

bool read_process_mem(std::uint64_t& rss) {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmRSS:", 0) == 0) {
      std::istringstream ls(line.substr(6));
      std::uint64_t kb;
      if (ls >> kb) {
        rss = kb * 1024;
        return true;
      }
      return false;
    }
  }
  return false;
}

// Whole physical devices only; partitions carry a trailing digit suffix and
// are excluded by the anchored pattern.
bool physical_disk(const std::string& name) {
  static const std::regex pattern(
      R"(^(sd[a-z]+|hd[a-z]+|vd[a-z]+|xvd[a-z]+|nvme\d+n\d+|mmcblk\d+)$)");
  return std::regex_match(name, pattern);
}

bool read_disk(DiskTotals& out) {
  std::ifstream in("/proc/diskstats");
  if (!in) return false;
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    unsigned major, minor;
    std::string name;
    std::uint64_t r_done, r_merged, r_sectors, r_ms, w_done, w_merged, w_sectors;
    if (!(ls >> major >> minor >> name >> r_done >> r_merged >> r_sectors >> r_ms >> w_done >>
          w_merged >> w_sectors))
      continue;
    if (!physical_disk(name)) continue;
    out.transfers += r_done + w_done;
    out.sectors_read += r_sectors;
    out.sectors_written += w_sectors;
    any = true;
  }
  return any;
}

bool read_net(NetTotals& out) {
  std::ifstream in("/proc/net/dev");
  if (!in) return false;
  std::string line;
  std::getline(in, line);
  std::getline(in, line);  // two header lines
  bool any = false;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string iface = line.substr(0, colon);
    iface.erase(std::remove(iface.begin(), iface.end(), ' '), iface.end());
    if (iface == "lo") continue;
    std::istringstream ls(line.substr(colon + 1));
    std::uint64_t rbytes, v, tbytes;
    if (!(ls >> rbytes)) continue;
    for (int i = 0; i < 7; ++i) ls >> v;
    if (!(ls >> tbytes)) continue;
    out.recv += rbytes;
    out.sent += tbytes;
    any = true;
  }
  return any;
}

template <typename T>
void put(std::ostringstream& out, const std::optional<T>& v) {
  out << ',';
  if (v) out << *v;
}

template <typename T>
std::optional<T> get_field(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  if constexpr (std::is_same_v<T, double>) {
    return std::stod(cell);
  } else {
    return static_cast<T>(std::stoull(cell));
  }
}

}  // namespace

struct SystemProbe::Snapshot {
  std::chrono::steady_clock::time_point mono;
  bool has_cpu = false;
  CpuTimes cpu;
  bool has_disk = false;
  DiskTotals disk;
  bool has_net = false;
  NetTotals net;
};

SystemProbe::SystemProbe() = default;
SystemProbe::~SystemProbe() = default;

MonitorSample SystemProbe::sample() {
  MonitorSample s;
  s.wall_ms = wall_now_ms();

  auto snap = std::make_unique<Snapshot>();
  snap->mono = std::chrono::steady_clock::now();
  snap->has_cpu = read_cpu(snap->cpu);
  snap->has_disk = read_disk(snap->disk);
  snap->has_net = read_net(snap->net);

  std::uint64_t mem = 0;
  if (read_mem(mem)) s.mem_used = mem;
  std::uint64_t rss = 0;
  if (read_process_mem(rss)) s.process_mem = rss;

  if (!snap->has_cpu && !s.mem_used) s.valid = false;

  if (prev_) {
    const double elapsed =
        std::chrono::duration<double>(snap->mono - prev_->mono).count();
    if (elapsed > 0) {
      if (snap->has_cpu && prev_->has_cpu && snap->cpu.total > prev_->cpu.total) {
        const double dt = static_cast<double>(snap->cpu.total - prev_->cpu.total);
        const double didle = static_cast<double>(snap->cpu.idle - prev_->cpu.idle);
        s.cpu_usage = std::clamp(1.0 - didle / dt, 0.0, 1.0);
      }
      if (snap->has_disk && prev_->has_disk) {
        s.disk_tps = static_cast<double>(snap->disk.transfers - prev_->disk.transfers) / elapsed;
        s.disk_read_bps =
            static_cast<double>(snap->disk.sectors_read - prev_->disk.sectors_read) * 512.0 / elapsed;
        s.disk_write_bps =
            static_cast<double>(snap->disk.sectors_written - prev_->disk.sectors_written) * 512.0 /
            elapsed;
      }
      if (snap->has_net && prev_->has_net) {
        s.net_recv_bps = static_cast<double>(snap->net.recv - prev_->net.recv) / elapsed;
        s.net_send_bps = static_cast<double>(snap->net.sent - prev_->net.sent) / elapsed;
      }
    }
  }
  prev_ = std::move(snap);
  return s;
}

std::string monitor_csv_header() {
  return "time_ms,valid,cpu_usage,mem_used,process_mem,disk_tps,disk_read_bps,disk_write_bps,"
         "net_recv_bps,net_send_bps,data_dir_used";
}

std::string sample_to_csv(const MonitorSample& s) {
  std::ostringstream out;
  out.precision(15);
  out << s.wall_ms << ',' << (s.valid ? 1 : 0);
  put(out, s.cpu_usage);
  put(out, s.mem_used);
  put(out, s.process_mem);
  put(out, s.disk_tps);
  put(out, s.disk_read_bps);
  put(out, s.disk_write_bps);
  put(out, s.net_recv_bps);
  put(out, s.net_send_bps);
  put(out, s.data_dir_used);
  return out.str();
}

MonitorSample sample_from_csv(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(pos));
      break;
    }
    cells.emplace_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  if (cells.size() != 11) throw std::invalid_argument("monitor line must have 11 fields");
  MonitorSample s;
  s.wall_ms = std::stoll(cells[0]);
  s.valid = cells[1] == "1";
  s.cpu_usage = get_field<double>(cells[2]);
  s.mem_used = get_field<std::uint64_t>(cells[3]);
  s.process_mem = get_field<std::uint64_t>(cells[4]);
  s.disk_tps = get_field<double>(cells[5]);
  s.disk_read_bps = get_field<double>(cells[6]);
  s.disk_write_bps = get_field<double>(cells[7]);
  s.net_recv_bps = get_field<double>(cells[8]);
  s.net_send_bps = get_field<double>(cells[9]);
  s.data_dir_used = get_field<std::uint64_t>(cells[10]);
  return s;
}

Monitor::Monitor(std::int64_t interval_ms, Sink sink, SpaceProbe space_probe)
    : interval_ms_(interval_ms), sink_(std::move(sink)), space_probe_(std::move(space_probe)) {}

Monitor::~Monitor() { stop(); }

void Monitor::start() {
  if (thread_.joinable()) return;
  stopping_ = false;
  thread_ = std::thread([this] { run(); });
}

void Monitor::stop() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  if (thread_.joinable()) thread_.join();
}

void Monitor::run() {
  auto next = std::chrono::steady_clock::now() + std::chrono::milliseconds(interval_ms_);
  for (;;) {
    {
      std::unique_lock lock(mu_);
      if (cv_.wait_until(lock, next, [this] { return stopping_; })) return;
    }
    next += std::chrono::milliseconds(interval_ms_);

    MonitorSample s = probe_.sample();
    if (space_probe_) {
      try {
        s.data_dir_used = space_probe_();
      } catch (const std::exception&) {
        s.data_dir_used = std::nullopt;
      }
    }
    if (s.wall_ms <= last_wall_ms_) s.wall_ms = last_wall_ms_ + 1;
    last_wall_ms_ = s.wall_ms;
    try {
      sink_(s);
    } catch (const std::exception& e) {
      std::cerr << "monitor sink error: " << e.what() << "\n";
    }
  }
}

}  // namespace tsbench
