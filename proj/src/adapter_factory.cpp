// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include <memory>

#include "tsbench/adapter.hpp"
#include "tsbench/influx_adapter.hpp"
#include "tsbench/reference_adapter.hpp"
#include "tsbench/sqlite_adapter.hpp"

namespace tsbench {

AdapterFactory make_adapter_factory(const Config& cfg) {
  if (cfg.adapter == "reference") {
    auto store = std::make_shared<ReferenceStore>();
    return [store] { return std::make_unique<ReferenceAdapter>(store); };
  }
  if (cfg.adapter == "sqlite") {
    auto backend = std::make_shared<SqliteBackend>(cfg.adapter_url);
    return [backend, cfg] { return std::make_unique<SqliteAdapter>(backend, cfg); };
  }
  if (cfg.adapter == "influxdb") {
    const std::string url = cfg.adapter_url.empty() ? "http://127.0.0.1:8086" : cfg.adapter_url;
    return [url, db = cfg.adapter_db, type = cfg.data_type] {
      return std::make_unique<InfluxAdapter>(url, db, type);
    };
  }
  throw ConfigError("ADAPTER '" + cfg.adapter + "' is not supported");
}

}  // namespace tsbench
