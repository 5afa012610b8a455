// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <string>

#include "tsbench/query.hpp"
#include "tsbench/schema.hpp"
#include "tsbench/workload.hpp"

namespace tsbench {

// Canonical SQL over one wide table data(device, time, s_0, ...). The same
// text runs on any engine with upsert support; group-by-time uses integer
// bucket arithmetic instead of vendor time functions.

std::string sql_ddl(const Config& cfg);

// Single multi-row upsert (last write wins on (device, time)).
std::string render_insert_sql(const Batch& batch, const Schema& schema, DataType type);

std::string render_query_sql(const QueryDescriptor& q, const Schema& schema);

}  // namespace tsbench
