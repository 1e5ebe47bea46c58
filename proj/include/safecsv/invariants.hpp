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

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "safecsv/model.hpp"

namespace safecsv {

inline constexpr std::string_view kCellInvPrefix = "Invalid cell invariant: ";
inline constexpr std::string_view kRowInvPrefix = "Invalid row invariant: ";
inline constexpr std::string_view kColInvPrefix = "Invalid col invariant: ";
inline constexpr std::string_view kFileInvPrefix = "Invalid file invariant: ";

/// Invariants that are not attached to a single header.
struct InvariantSuite {
  RowInv row_inv;
  FileInv file_inv;
};

/// Type conformance check applied to every cell.
Reason implicit_cell_check(CsvType t, const CsvValue& v);

/// Row width check applied to every raw row. `row_no` is 1-based.
Reason implicit_row_width_check(std::size_t header_count, std::size_t row_width, std::size_t row_no);

/// Evaluates the implicit cell checks and every user invariant over `d`.
///
/// Cell failures are located at the cell; row failures at column 1 of the
/// row; column failures at the first row whose column prefix fails; file
/// failures at (1, 1). Row numbers come from `d.source_row`.
std::set<CsvError> csv_invariants_failed(const Data& d, const InvariantSuite& suite);

/// Numeric range check: `low_msg` below `lo`, `high_msg` above `hi`.
/// Non-numeric values pass (the type check reports them).
CellInv make_range_cell_inv(double lo, double hi, std::string low_msg, std::string high_msg);

/// Fails with `msg` when the column holds a repeated value. Prefix-monotone.
ColInv make_unique_col_inv(std::string msg);

/// Checks bmi == weight_kg / (height_cm / 100)^2 to `precision` decimal
/// digits. Column indices are 1-based.
RowInv make_bmi_row_inv(std::size_t weight_col, std::size_t height_col, std::size_t bmi_col,
                        unsigned precision);

/// Checks that the numeric cells of column `col` (1-based) sum to `expected`.
FileInv make_col_sum_file_inv(std::size_t col, double expected, unsigned precision, std::string msg);

}  // namespace safecsv
