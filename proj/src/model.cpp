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

#include "safecsv/model.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <charconv>
#include <cmath>

namespace safecsv {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string_view trim_blanks(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool iequals(std::string_view a, std::string_view b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
    return lower(x) == lower(y);
  });
}

// [+-]? digits ( '.' digits? )? | [+-]? '.' digits, then optional exponent.
bool matches_float_grammar(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = 0;
  while (i < s.size() && is_digit(s[i])) ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) ++i, ++frac_digits;
  }
  if (int_digits + frac_digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && is_digit(s[i])) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

std::string invalid_cell(std::string_view raw, CsvType t) {
  std::string msg = "cell value \"";
  msg.append(raw);
  msg += "\" is not a valid ";
  msg.append(type_name(t));
  return msg;
}

}  // namespace

std::string_view type_name(CsvType t) noexcept {
  switch (t) {
    case CsvType::String:
      return "String";
    case CsvType::Integer:
      return "Integer";
    case CsvType::Float:
      return "Float";
    case CsvType::Boolean:
      return "Boolean";
  }
  return "?";
}

std::optional<CsvType> type_from_name(std::string_view name) noexcept {
  if (name == "String" || name == "Str") return CsvType::String;
  if (name == "Integer" || name == "Int") return CsvType::Integer;
  if (name == "Float") return CsvType::Float;
  if (name == "Boolean" || name == "Bool") return CsvType::Boolean;
  return std::nullopt;
}

std::optional<double> CsvValue::numeric() const noexcept {
  if (is_integer()) return static_cast<double>(as_integer());
  if (is_real()) return as_real();
  return std::nullopt;
}

bool CsvValue::conforms_to(CsvType t) const noexcept { return natural_type() == t; }

Header::Header(std::string name, CsvType type, CsvValue default_value, CellInv cell_inv,
               ColInv col_inv)
    : name_(std::move(name)),
      type_(type),
      default_(std::move(default_value)),
      cell_inv_(std::move(cell_inv)),
      col_inv_(std::move(col_inv)) {
  if (!default_.conforms_to(type_)) {
    throw SchemaError("default does not conform to type " + std::string(type_name(type_)));
  }
}

CsvValue zero_value(CsvType t) {
  switch (t) {
    case CsvType::String:
      return CsvValue::text("");
    case CsvType::Integer:
      return CsvValue::integer(0);
    case CsvType::Float:
      return CsvValue::real(0.0);
    case CsvType::Boolean:
      return CsvValue::boolean(false);
  }
  return CsvValue::text("");
}

Reason CsvSettings::check() const {
  auto is_eol = [](char c) { return c == '\r' || c == '\n'; };
  if (is_eol(delimiter) || is_eol(quote)) return "delimiter and quote must not be line terminators";
  if (delimiter == quote) return "delimiter and quote must differ";
  if (line_comment) {
    if (is_eol(*line_comment)) return "comment character must not be a line terminator";
    if (*line_comment == delimiter || *line_comment == quote) {
      return "comment character must differ from delimiter and quote";
    }
  }
  return std::nullopt;
}

CellParse parse_cell(CsvType t, std::string_view raw, bool trim) {
  CellParse out;
  if (t == CsvType::String) {
    out.value = CsvValue::text(std::string(raw));
    return out;
  }
  const std::string_view s = trim ? trim_blanks(raw) : raw;
  switch (t) {
    case CsvType::Integer: {
      std::string_view body = s;
      std::string_view digits = s;
      if (!s.empty() && s.front() == '+') {
        body.remove_prefix(1);
        digits = body;
      } else if (!s.empty() && s.front() == '-') {
        digits.remove_prefix(1);
      }
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), is_digit)) break;
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc{} || ptr != body.data() + body.size()) break;
      out.value = CsvValue::integer(v);
      return out;
    }
    case CsvType::Float: {
      if (!matches_float_grammar(s)) break;
      std::string_view body = s;
      if (body.front() == '+') body.remove_prefix(1);
      double v = 0;
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(v)) break;
      out.value = CsvValue::real(v);
      return out;
    }
    case CsvType::Boolean:
      if (iequals(s, "true")) {
        out.value = CsvValue::boolean(true);
        return out;
      }
      if (iequals(s, "false")) {
        out.value = CsvValue::boolean(false);
        return out;
      }
      break;
    case CsvType::String:
      break;
  }
  out.reason = invalid_cell(raw, t);
  return out;
}

std::string render_value(const CsvValue& v) {
  if (v.is_text()) return v.as_text();
  if (v.is_boolean()) return v.as_boolean() ? "true" : "false";
  std::array<char, 32> buf{};
  std::to_chars_result r{};
  if (v.is_integer()) {
    r = std::to_chars(buf.data(), buf.data() + buf.size(), v.as_integer());
  } else {
    r = std::to_chars(buf.data(), buf.data() + buf.size(), v.as_real());
  }
  return std::string(buf.data(), r.ptr);
}

std::optional<std::string_view> apply_default(const Header& /*h*/, const RawField& raw) {
  if (raw.text.empty() && !raw.quoted) return std::nullopt;
  return std::string_view(raw.text);
}

std::vector<TransposedRow> transpose(const Matrix& m) {
  std::vector<TransposedRow> out;
  if (m.empty()) return out;
  const std::size_t width = m.front().size();
  out.assign(width, TransposedRow{});
  for (auto& col : out) col.reserve(m.size());
  for (const auto& row : m) {
    assert(row.size() == width && "transpose requires a rectangular matrix");
    for (std::size_t c = 0; c < width; ++c) out[c].push_back(row[c]);
  }
  return out;
}

bool approx_eq(double a, double b, unsigned precision) noexcept {
  if (!std::isfinite(a) || !std::isfinite(b)) return std::isinf(a) && a == b;
  return std::fabs(a - b) <= 0.5 * std::pow(10.0, -static_cast<double>(precision));
}

}  // namespace safecsv
