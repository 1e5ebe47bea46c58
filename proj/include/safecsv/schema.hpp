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

// Line-oriented schema files.
//
//   # comment
//   settings delimiter="," quote="\"" comment="#" skip_blank=true trim=true
//   header name="Age" type=Integer default=18 description="years"
//          cell=range(18,65,"below minimal age","above maximal age")
//          col=unique("no duplicate ages are allowed")
//   row bmi(weight=3,height=4,bmi=5,precision=2)
//   file col_sum(col=2,expected=100.0,precision=2,msg="tax total mismatch")
//
// One directive per line (the header example above is wrapped for display).
// Header lines fix column order. Strings are double-quoted; backslash
// escapes \", \\, \t, \n and \r. `comment=""` disables comment lines.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safecsv/invariants.hpp"
#include "safecsv/model.hpp"

namespace safecsv {

struct RangeSpec {
  double lo = 0;
  double hi = 0;
  std::string low_msg;
  std::string high_msg;
  friend bool operator==(const RangeSpec&, const RangeSpec&) = default;
};

struct UniqueSpec {
  std::string msg;
  friend bool operator==(const UniqueSpec&, const UniqueSpec&) = default;
};

struct BmiSpec {
  std::size_t weight_col = 0;
  std::size_t height_col = 0;
  std::size_t bmi_col = 0;
  unsigned precision = 2;
  friend bool operator==(const BmiSpec&, const BmiSpec&) = default;
};

struct ColSumSpec {
  std::size_t col = 0;
  double expected = 0;
  unsigned precision = 2;
  std::string msg;
  friend bool operator==(const ColSumSpec&, const ColSumSpec&) = default;
};

struct HeaderSpec {
  std::string name;
  CsvType type = CsvType::String;
  CsvValue default_value;
  std::optional<std::string> description;
  std::optional<RangeSpec> cell;
  std::optional<UniqueSpec> col;
  friend bool operator==(const HeaderSpec&, const HeaderSpec&) = default;
};

/// Declarative form of a header list plus built-in invariants.
struct SchemaDocument {
  CsvSettings settings;
  std::vector<HeaderSpec> headers;
  std::optional<BmiSpec> row;
  std::optional<ColSumSpec> file;

  Headers build_headers() const;
  InvariantSuite build_suite() const;

  friend bool operator==(const SchemaDocument&, const SchemaDocument&) = default;
};

struct SchemaDiagnostic {
  std::size_t line = 0;  // 1-based; 0 for whole-document problems
  std::string message;
  std::string token;

  std::string to_string() const;
};

struct SchemaParse {
  std::optional<SchemaDocument> document;
  SchemaDiagnostic diagnostic;

  explicit operator bool() const noexcept { return document.has_value(); }
};

SchemaParse parse_schema(std::string_view text);

/// Canonical text for `doc`; parse_schema(render_schema(doc)) == doc.
std::string render_schema(const SchemaDocument& doc);

/// Name/Age/Weight(Kg)/Height(cm)/BMI people table with age, weight, height
/// and BMI ranges, unique names and a BMI consistency row check.
SchemaDocument example_people_schema();

}  // namespace safecsv
