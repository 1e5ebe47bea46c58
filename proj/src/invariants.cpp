// Copyright 2026 The safecsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "safecsv/invariants.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

namespace safecsv {

namespace {

std::string prefixed(std::string_view prefix, const std::string& reason) {
  std::string out(prefix);
  out += reason;
  return out;
}

// An invariant that returns an empty string still failed; give it a
// printable reason so CsvError keeps its non-empty contract.
std::string nonempty(std::string reason) { return reason.empty() ? "(no reason given)" : reason; }

// Smallest k in [1, n] such that the prefix of length k fails, for a
// prefix-monotone invariant. Requires that the full column fails.
std::size_t first_failing_prefix(const Header& h, std::span<const CsvValue> col) {
  std::size_t lo = 1;
  std::size_t hi = col.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (h.col_inv()(h, col.first(mid))) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace

Reason implicit_cell_check(CsvType t, const CsvValue& v) {
  if (v.conforms_to(t)) return std::nullopt;
  return "cell value is not of declared type " + std::string(type_name(t));
}

Reason implicit_row_width_check(std::size_t header_count, std::size_t row_width, std::size_t row_no) {
  if (row_width == header_count) return std::nullopt;
  std::string msg = "CSV row " + std::to_string(row_no) + " is too ";
  msg += row_width < header_count ? "short" : "long";
  msg += " for header: expected " + std::to_string(header_count) + " columns found " +
         std::to_string(row_width) + " columns";
  return msg;
}

std::set<CsvError> csv_invariants_failed(const Data& d, const InvariantSuite& suite) {
  std::set<CsvError> errors;
  const Headers& headers = d.headers;
  const Matrix& m = d.matrix;
  if (m.empty()) return errors;

  for (std::size_t r = 0; r < m.size(); ++r) {
    const Row& row = m[r];
    assert(row.size() == headers.size());
    const std::size_t row_no = d.source_row(r);
    for (std::size_t c = 0; c < headers.size(); ++c) {
      const Header& h = headers[c];
      if (!row[c].conforms_to(h.type())) {
        errors.insert({row_no, c + 1, *implicit_cell_check(h.type(), row[c])});
        continue;
      }
      if (h.cell_inv()) {
        if (auto why = h.cell_inv()(h.type(), row[c])) {
          errors.insert({row_no, c + 1, prefixed(kCellInvPrefix, nonempty(std::move(*why)))});
        }
      }
    }
    if (suite.row_inv) {
      if (auto why = suite.row_inv(headers, row)) {
        errors.insert({row_no, 1, prefixed(kRowInvPrefix, nonempty(std::move(*why)))});
      }
    }
  }

  const bool any_col_inv =
      std::any_of(headers.begin(), headers.end(), [](const Header& h) { return static_cast<bool>(h.col_inv()); });
  const auto columns = any_col_inv ? transpose(m) : std::vector<TransposedRow>{};
  for (std::size_t c = 0; c < headers.size(); ++c) {
    const Header& h = headers[c];
    if (!h.col_inv()) continue;
    const std::span<const CsvValue> col(columns[c]);
    std::size_t failing = 0;
    Reason why;
    if (h.col_inv_monotone()) {
      if (h.col_inv()(h, col)) {
        failing = first_failing_prefix(h, col);
        why = h.col_inv()(h, col.first(failing));
      }
    } else {
      for (std::size_t k = 1; k <= col.size(); ++k) {
        why = h.col_inv()(h, col.first(k));
        if (why) {
          failing = k;
          break;
        }
      }
    }
    if (failing != 0 && why) {
      errors.insert({d.source_row(failing - 1), c + 1, prefixed(kColInvPrefix, nonempty(std::move(*why)))});
    }
  }

  if (suite.file_inv) {
    if (auto why = suite.file_inv(headers, m)) {
      errors.insert({1, 1, prefixed(kFileInvPrefix, nonempty(std::move(*why)))});
    }
  }
  return errors;
}

CellInv make_range_cell_inv(double lo, double hi, std::string low_msg, std::string high_msg) {
  return [lo, hi, low = std::move(low_msg), high = std::move(high_msg)](CsvType, const CsvValue& v) -> Reason {
    const auto x = v.numeric();
    if (!x) return std::nullopt;
    if (*x < lo) return low;
    if (*x > hi) return high;
    return std::nullopt;
  };
}

ColInv make_unique_col_inv(std::string msg) {
  return [msg = std::move(msg)](const Header&, std::span<const CsvValue> col) -> Reason {
    std::vector<CsvValue> sorted(col.begin(), col.end());
    std::sort(sorted.begin(), sorted.end(), [](const CsvValue& a, const CsvValue& b) { return a < b; });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return msg;
    return std::nullopt;
  };
}

RowInv make_bmi_row_inv(std::size_t weight_col, std::size_t height_col, std::size_t bmi_col,
                        unsigned precision) {
  return [=](const Headers& headers, const Row& row) -> Reason {
    const std::size_t needed = std::max({weight_col, height_col, bmi_col});
    if (headers.size() < needed || row.size() < needed) return "invalid BMI header";
    const auto weight = row[weight_col - 1].numeric();
    const auto height = row[height_col - 1].numeric();
    const auto bmi = row[bmi_col - 1].numeric();
    if (!weight || !height || !bmi) return std::nullopt;
    const double metres = *height / 100.0;
    const double expected = *weight / (metres * metres);
    if (approx_eq(*bmi, expected, precision)) return std::nullopt;
    return "invalid BMI for given CSV weight and height";
  };
}

FileInv make_col_sum_file_inv(std::size_t col, double expected, unsigned precision, std::string msg) {
  return [=, msg = std::move(msg)](const Headers&, const Matrix& m) -> Reason {
    double sum = 0.0;
    for (const auto& row : m) {
      if (col == 0 || col > row.size()) continue;
      if (auto x = row[col - 1].numeric()) sum += *x;
    }
    if (approx_eq(sum, expected, precision)) return std::nullopt;
    return msg;
  };
}

}  // namespace safecsv
