// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <string>

#include "tsbench/schema.hpp"
#include "tsbench/workload.hpp"

namespace tsbench {

// InfluxDB 1.x line protocol, one line per record:
//   <group>,device=<d_j> s_0=<v>,...,s_m=<v> <timestamp_ns>
// Timestamps convert ms -> ns; integer fields carry the 'i' suffix; TEXT
// fields are quote-escaped. Throws AdapterError on non-finite values.
std::string encode_line_protocol(const Batch& batch, const Schema& schema, DataType type);

std::string encode_record_line(const Record& r, const Schema& schema, DataType type);

}  // namespace tsbench
