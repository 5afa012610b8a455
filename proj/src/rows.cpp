// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include "tsbench/rows.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace tsbench {

namespace {

// TEXT sorts after numerics; numerics sort by value so near-equal rows line up
// for the tolerant comparison.
std::tuple<const std::string&, const std::string&, std::int64_t, int, double, const std::string*>
sort_key(const ResultRow& r) {
  static const std::string empty;
  if (const auto* s = std::get_if<std::string>(&r.value))
    return {r.device, r.label, r.timestamp, 1, 0.0, s};
  return {r.device, r.label, r.timestamp, 0, value_as_double(r.value), &empty};
}

}  // namespace

void normalize_rows(RowSet& rows) {
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    const auto ka = sort_key(a);
    const auto kb = sort_key(b);
    return std::tie(std::get<0>(ka), std::get<1>(ka), std::get<2>(ka), std::get<3>(ka),
                    std::get<4>(ka), *std::get<5>(ka)) <
           std::tie(std::get<0>(kb), std::get<1>(kb), std::get<2>(kb), std::get<3>(kb),
                    std::get<4>(kb), *std::get<5>(kb));
  });
}

bool values_close(const Value& a, const Value& b, double tol) {
  const bool a_text = is_text(a);
  const bool b_text = is_text(b);
  if (a_text != b_text) return false;
  if (a_text) return std::get<std::string>(a) == std::get<std::string>(b);
  const double x = value_as_double(a);
  const double y = value_as_double(b);
  return std::fabs(x - y) <= tol * std::max({1.0, std::fabs(x), std::fabs(y)});
}

bool rows_equivalent(RowSet a, RowSet b, double tol) {
  if (a.size() != b.size()) return false;
  normalize_rows(a);
  normalize_rows(b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].device != b[i].device || a[i].label != b[i].label ||
        a[i].timestamp != b[i].timestamp || !values_close(a[i].value, b[i].value, tol)) {
      return false;
    }
  }
  return true;
}

}  // namespace tsbench
