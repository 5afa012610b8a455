// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace tsbench {

enum class DataType { kFloat, kDouble, kInt32, kInt64, kText };

// One sensor reading. Numeric types live in double/int64; TEXT keeps the
// rendered string so round trips are byte stable.
using Value = std::variant<double, std::int64_t, std::string>;

// Converts a raw generator output to the configured type. Integer types round
// half to even; TEXT renders with fixed 2 decimals; FLOAT goes through float
// precision.
Value value_for(double raw, DataType type);

// Text form used by the workload dump and the line protocol: shortest
// round-trip for floating point, plain decimal for integers, raw for TEXT.
std::string format_value(const Value& v, DataType type);

// Numeric view; throws std::invalid_argument for TEXT.
double value_as_double(const Value& v);

bool is_text(const Value& v);

}  // namespace tsbench
