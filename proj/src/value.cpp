// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tsbench {

namespace {

template <typename F>
std::string shortest(F v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  std::string out(buf, p);
  // Keep a decimal marker so floating-point fields stay visibly floating
  // point (line protocol floats have no suffix; "5" alone reads integral).
  if (out.find_first_of(".eE") == std::string::npos &&
      out.find_first_not_of("-0123456789") == std::string::npos) {
    out += ".0";
  }
  return out;
}

}  // namespace

Value value_for(double raw, DataType type) {
  switch (type) {
    case DataType::kFloat:
      return static_cast<double>(static_cast<float>(raw));
    case DataType::kDouble:
      return raw;
    case DataType::kInt32:
    case DataType::kInt64:
      // llrint under the default rounding mode: half to even.
      return static_cast<std::int64_t>(std::llrint(raw));
    case DataType::kText: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2f", raw);
      return std::string(buf);
    }
  }
  return raw;
}

std::string format_value(const Value& v, DataType type) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (type == DataType::kFloat) return shortest(static_cast<float>(*d));
    return shortest(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return std::get<std::string>(v);
}

double value_as_double(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw std::invalid_argument("TEXT value has no numeric view");
}

bool is_text(const Value& v) { return std::holds_alternative<std::string>(v); }

}  // namespace tsbench
