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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace safecsv {

/// Declared type of a CSV column.
enum class CsvType { String, Integer, Float, Boolean };

/// Canonical display name ("String", "Integer", "Float", "Boolean").
std::string_view type_name(CsvType t) noexcept;

/// Accepts the canonical names and the short aliases Str, Int, Bool.
std::optional<CsvType> type_from_name(std::string_view name) noexcept;

/// A typed cell value.
///
/// Built through the named factories so that string literals never decay
/// into the boolean alternative.
class CsvValue {
 public:
  CsvValue() : v_(std::string{}) {}

  static CsvValue text(std::string s) { return CsvValue(Storage(std::in_place_index<0>, std::move(s))); }
  static CsvValue integer(std::int64_t i) { return CsvValue(Storage(std::in_place_index<1>, i)); }
  static CsvValue real(double d) { return CsvValue(Storage(std::in_place_index<2>, d)); }
  static CsvValue boolean(bool b) { return CsvValue(Storage(std::in_place_index<3>, b)); }

  bool is_text() const noexcept { return v_.index() == 0; }
  bool is_integer() const noexcept { return v_.index() == 1; }
  bool is_real() const noexcept { return v_.index() == 2; }
  bool is_boolean() const noexcept { return v_.index() == 3; }

  const std::string& as_text() const { return std::get<0>(v_); }
  std::int64_t as_integer() const { return std::get<1>(v_); }
  double as_real() const { return std::get<2>(v_); }
  bool as_boolean() const { return std::get<3>(v_); }

  /// Int or Flt widened to double; empty for Text and Bool.
  std::optional<double> numeric() const noexcept;

  /// True iff the variant matches `t`.
  bool conforms_to(CsvType t) const noexcept;

  /// Type whose variant this value carries.
  CsvType natural_type() const noexcept { return static_cast<CsvType>(v_.index()); }

  friend bool operator==(const CsvValue&, const CsvValue&) = default;
  friend std::partial_ordering operator<=>(const CsvValue& a, const CsvValue& b) { return a.v_ <=> b.v_; }

 private:
  using Storage = std::variant<std::string, std::int64_t, double, bool>;
  explicit CsvValue(Storage v) : v_(std::move(v)) {}
  Storage v_;
};

/// Absent when an invariant holds, otherwise a non-empty explanation.
using Reason = std::optional<std::string>;

class Header;
using Headers = std::vector<Header>;
using Row = std::vector<CsvValue>;
using Matrix = std::vector<Row>;
/// One column viewed top to bottom.
using TransposedRow = std::vector<CsvValue>;

using CellInv = std::function<Reason(CsvType, const CsvValue&)>;
using RowInv = std::function<Reason(const Headers&, const Row&)>;
using ColInv = std::function<Reason(const Header&, std::span<const CsvValue>)>;
using FileInv = std::function<Reason(const Headers&, const Matrix&)>;

/// Raised for schema-level mistakes such as a default that does not match
/// the declared column type.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-column declaration: name, type, default and optional invariants.
class Header {
 public:
  /// Throws SchemaError when `default_value` does not conform to `type`.
  Header(std::string name, CsvType type, CsvValue default_value, CellInv cell_inv = {},
         ColInv col_inv = {});

  const std::string& name() const noexcept { return name_; }
  CsvType type() const noexcept { return type_; }
  const CsvValue& default_value() const noexcept { return default_; }
  const std::optional<std::string>& description() const noexcept { return description_; }
  const CellInv& cell_inv() const noexcept { return cell_inv_; }
  const ColInv& col_inv() const noexcept { return col_inv_; }

  /// Declares that once the column invariant fails on a prefix it fails on
  /// every longer prefix, which lets the evaluator bisect instead of scanning.
  bool col_inv_monotone() const noexcept { return col_inv_monotone_; }

  Header& set_name(std::string name) {
    name_ = std::move(name);
    return *this;
  }
  Header& set_description(std::string d) {
    description_ = std::move(d);
    return *this;
  }
  Header& set_cell_inv(CellInv inv) {
    cell_inv_ = std::move(inv);
    return *this;
  }
  Header& set_col_inv(ColInv inv, bool monotone = false) {
    col_inv_ = std::move(inv);
    col_inv_monotone_ = monotone && static_cast<bool>(col_inv_);
    return *this;
  }

 private:
  std::string name_;
  CsvType type_;
  CsvValue default_;
  std::optional<std::string> description_;
  CellInv cell_inv_;
  ColInv col_inv_;
  bool col_inv_monotone_ = false;
};

/// Type-canonical zero value: "", 0, 0.0, false.
CsvValue zero_value(CsvType t);

/// CSV dialect in force for reading and writing.
struct CsvSettings {
  char delimiter = ',';
  char quote = '"';
  std::optional<char> line_comment;
  bool skip_blank_lines = true;
  bool trim_unquoted = true;

  /// Reason the settings are unusable, if any.
  Reason check() const;

  friend bool operator==(const CsvSettings&, const CsvSettings&) = default;
};

/// A loaded CSV document.
struct Data {
  CsvSettings settings;
  Headers headers;
  Matrix matrix;
  /// 1-based source data-row number of each matrix row. Rows rejected during
  /// loading leave gaps; empty means the identity numbering 1..R.
  std::vector<std::size_t> row_numbers;

  std::size_t source_row(std::size_t index) const {
    return row_numbers.empty() ? index + 1 : row_numbers[index];
  }
};

/// A located failure. Rows count data rows from 1 with the header line
/// excluded; columns count from 1.
struct CsvError {
  std::size_t row_no;
  std::size_t col_no;
  std::string reason;

  friend auto operator<=>(const CsvError&, const CsvError&) = default;
  friend bool operator==(const CsvError&, const CsvError&) = default;
};

/// Result of parsing one raw cell: a value, or the reason it was rejected.
struct CellParse {
  std::optional<CsvValue> value;
  std::string reason;

  explicit operator bool() const noexcept { return value.has_value(); }
};

/// Parses `raw` against `t`. When `trim` is set, surrounding spaces and tabs
/// are ignored for Integer, Float and Boolean.
CellParse parse_cell(CsvType t, std::string_view raw, bool trim = true);

/// Serializes a value the way the writer does: shortest round-trip decimals,
/// "true"/"false", text verbatim (quoting is the writer's job).
std::string render_value(const CsvValue& v);

/// A raw field as produced by a parser backend.
struct RawField {
  std::string text;
  bool quoted = false;

  friend bool operator==(const RawField&, const RawField&) = default;
};
using RawRow = std::vector<RawField>;

/// The raw text to parse, or nullopt when the column default applies: an
/// empty unquoted field (a comma-sequence). Quoted "" passes through.
std::optional<std::string_view> apply_default(const Header& h, const RawField& raw);

/// result[c][r] == m[r][c]. All rows must have the same width.
std::vector<TransposedRow> transpose(const Matrix& m);

/// |a - b| <= 0.5 * 10^-precision. Non-finite values are equal only when
/// they are the same infinity.
bool approx_eq(double a, double b, unsigned precision) noexcept;

}  // namespace safecsv
