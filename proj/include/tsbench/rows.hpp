// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsbench/value.hpp"

namespace tsbench {

// Normalized result row shared by every adapter:
//   device     device name
//   label      sensor name ("s_0") or aggregate label ("max(s_0)")
//   timestamp  point time, group start (Q10), or 0 for whole-range aggregates
//   value      numeric or TEXT
struct ResultRow {
  std::string device;
  std::string label;
  std::int64_t timestamp = 0;
  Value value;
};

using RowSet = std::vector<ResultRow>;

// Canonical order: (device, label, timestamp, value). Makes row sets
// comparable across adapters regardless of arrival order.
void normalize_rows(RowSet& rows);

// Order-insensitive equality. Numeric values compare with tolerance
// |a-b| <= tol * max(1, |a|, |b|); TEXT compares exactly.
bool rows_equivalent(RowSet a, RowSet b, double tol = 1e-9);

bool values_close(const Value& a, const Value& b, double tol);

}  // namespace tsbench
