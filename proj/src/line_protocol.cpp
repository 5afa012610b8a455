// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/line_protocol.hpp"

#include <cmath>

#include "tsbench/adapter.hpp"

namespace tsbench {

namespace {

// Measurement names and tag values escape comma, space and equals.
std::string escape_ident(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '=') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string escape_text_field(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string field_text(const Value& v, DataType type) {
  if (const auto* s = std::get_if<std::string>(&v)) return escape_text_field(*s);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i) + "i";
  const double d = std::get<double>(v);
  if (!std::isfinite(d)) throw AdapterError("non-finite field value is not encodable");
  return format_value(v, type);
}

}  // namespace

std::string encode_record_line(const Record& r, const Schema& schema, DataType type) {
  std::string line = escape_ident(schema.groups[schema.group_of(r.device)]);
  line += ",device=";
  line += escape_ident(schema.devices[r.device]);
  line += ' ';
  for (std::size_t s = 0; s < r.values.size(); ++s) {
    if (s) line += ',';
    line += schema.sensors[s];
    line += '=';
    line += field_text(r.values[s], type);
  }
  line += ' ';
  line += std::to_string(r.timestamp * 1000000);  // ms -> ns
  return line;
}

std::string encode_line_protocol(const Batch& batch, const Schema& schema, DataType type) {
  std::string out;
  for (const auto& r : batch.records) {
    out += encode_record_line(r, schema, type);
    out += '\n';
  }
  return out;
}

}  // namespace tsbench
