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

#include "safecsv/schema.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace safecsv {

namespace {

struct ParseFailure {
  std::string message;
  std::string token;
};

// A value on the right of `key=`: a string, a bare word, or a call.
struct Value {
  enum class Kind { String, Bare, Call } kind = Kind::Bare;
  std::string text;  // string contents, bare word, or call name
  std::string source;
  struct Arg {
    std::optional<std::string> key;
    bool quoted = false;
    std::string text;
  };
  std::vector<Arg> args;
};

struct Attr {
  std::string key;
  Value value;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }
bool is_bare(char c) { return !is_space(c) && c != '=' && c != '(' && c != ')' && c != ',' && c != '"'; }

class LineLexer {
 public:
  explicit LineLexer(std::string_view line) : s_(line) {}

  bool at_end() {
    skip_space();
    return i_ >= s_.size();
  }

  std::string word() {
    skip_space();
    const std::size_t start = i_;
    while (i_ < s_.size() && is_bare(s_[i_])) ++i_;
    if (start == i_) fail("expected a word");
    return std::string(s_.substr(start, i_ - start));
  }

  void expect(char c) {
    skip_space();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  bool accept(char c) {
    skip_space();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  std::string quoted() {
    skip_space();
    const std::size_t start = i_;
    if (i_ >= s_.size() || s_[i_] != '"') fail("expected a string");
    ++i_;
    std::string out;
    for (;;) {
      if (i_ >= s_.size()) {
        i_ = start;
        fail("unterminated string");
      }
      const char c = s_[i_++];
      if (c == '"') break;
      if (c == '\\') {
        if (i_ >= s_.size()) {
          i_ = start;
          fail("unterminated string");
        }
        const char e = s_[i_++];
        if (e == '"' || e == '\\') {
          out.push_back(e);
        } else if (e == 't') {
          out.push_back('\t');
        } else if (e == 'n') {
          out.push_back('\n');
        } else if (e == 'r') {
          out.push_back('\r');
        } else {
          i_ -= 2;
          fail("unknown escape");
        }
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  Value value() {
    skip_space();
    const std::size_t start = i_;
    Value v;
    if (i_ < s_.size() && s_[i_] == '"') {
      v.kind = Value::Kind::String;
      v.text = quoted();
    } else {
      v.text = word();
      if (i_ < s_.size() && s_[i_] == '(') {
        ++i_;
        v.kind = Value::Kind::Call;
        if (!accept(')')) {
          do {
            v.args.push_back(arg());
          } while (accept(','));
          expect(')');
        }
      }
    }
    v.source = std::string(s_.substr(start, i_ - start));
    return v;
  }

  Attr attr() {
    Attr a;
    a.key = word();
    expect('=');
    a.value = value();
    return a;
  }

  [[noreturn]] void fail(std::string msg) {
    skip_space();
    std::size_t end = i_;
    while (end < s_.size() && !is_space(s_[end])) ++end;
    throw ParseFailure{std::move(msg), std::string(s_.substr(i_, end - i_))};
  }

 private:
  Value::Arg arg() {
    Value::Arg a;
    skip_space();
    if (i_ < s_.size() && s_[i_] == '"') {
      a.quoted = true;
      a.text = quoted();
      return a;
    }
    std::string w = word();
    if (accept('=')) {
      a.key = std::move(w);
      skip_space();
      if (i_ < s_.size() && s_[i_] == '"') {
        a.quoted = true;
        a.text = quoted();
      } else {
        a.text = word();
      }
      return a;
    }
    a.text = std::move(w);
    return a;
  }

  void skip_space() {
    while (i_ < s_.size() && is_space(s_[i_])) ++i_;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

[[noreturn]] void fail(std::string msg, std::string token) { throw ParseFailure{std::move(msg), std::move(token)}; }

double to_real(const std::string& text, const std::string& token) {
  auto p = parse_cell(CsvType::Float, text, false);
  if (!p) fail("expected a number", token);
  return p.value->as_real();
}

std::size_t to_index(const std::string& text, const std::string& token) {
  auto p = parse_cell(CsvType::Integer, text, false);
  if (!p || p.value->as_integer() < 1) fail("expected a column index >= 1", token);
  return static_cast<std::size_t>(p.value->as_integer());
}

unsigned to_precision(const std::string& text, const std::string& token) {
  auto p = parse_cell(CsvType::Integer, text, false);
  if (!p || p.value->as_integer() < 0 || p.value->as_integer() > 17) fail("expected a precision in 0..17", token);
  return static_cast<unsigned>(p.value->as_integer());
}

bool to_bool(const Value& v) {
  auto p = parse_cell(CsvType::Boolean, v.text, false);
  if (v.kind == Value::Kind::Call || !p) fail("expected true or false", v.source);
  return p.value->as_boolean();
}

std::string to_message(const Value::Arg& a, const std::string& token) {
  if (!a.quoted) fail("expected a quoted message", token);
  if (a.text.empty()) fail("message must not be empty", token);
  return a.text;
}

char to_char(const Value& v) {
  if (v.kind == Value::Kind::Call || v.text.size() != 1) fail("expected a single character", v.source);
  return v.text.front();
}

// Named call arguments, each required exactly once.
std::map<std::string, std::string> named_args(const Value& v, std::initializer_list<std::string_view> keys) {
  std::map<std::string, std::string> out;
  for (const auto& a : v.args) {
    if (!a.key) fail("expected name=value argument", v.source);
    if (std::find(keys.begin(), keys.end(), *a.key) == keys.end()) fail("unknown argument '" + *a.key + "'", v.source);
    if (!out.emplace(*a.key, a.text).second) fail("duplicate argument '" + *a.key + "'", v.source);
  }
  for (auto k : keys) {
    if (!out.count(std::string(k))) fail("missing argument '" + std::string(k) + "'", v.source);
  }
  return out;
}

CsvSettings parse_settings(LineLexer& lex) {
  CsvSettings s;
  std::set<std::string> seen;
  while (!lex.at_end()) {
    Attr a = lex.attr();
    if (!seen.insert(a.key).second) fail("duplicate key '" + a.key + "'", a.key);
    if (a.key == "delimiter") {
      s.delimiter = to_char(a.value);
    } else if (a.key == "quote") {
      s.quote = to_char(a.value);
    } else if (a.key == "comment") {
      if (a.value.kind == Value::Kind::String && a.value.text.empty()) {
        s.line_comment.reset();
      } else {
        s.line_comment = to_char(a.value);
      }
    } else if (a.key == "skip_blank") {
      s.skip_blank_lines = to_bool(a.value);
    } else if (a.key == "trim") {
      s.trim_unquoted = to_bool(a.value);
    } else {
      fail("unknown settings key '" + a.key + "'", a.key);
    }
  }
  if (auto bad = s.check()) fail(*bad, "settings");
  return s;
}

HeaderSpec parse_header(LineLexer& lex) {
  HeaderSpec h;
  std::optional<std::string> name;
  std::optional<CsvType> type;
  std::optional<Value> default_text;
  std::set<std::string> seen;
  while (!lex.at_end()) {
    Attr a = lex.attr();
    if (!seen.insert(a.key).second) fail("duplicate key '" + a.key + "'", a.key);
    const Value& v = a.value;
    if (a.key == "name") {
      if (v.kind == Value::Kind::Call || v.text.empty()) fail("header name must be a non-empty string", v.source);
      name = v.text;
    } else if (a.key == "type") {
      if (v.kind != Value::Kind::Bare) fail("expected a type name", v.source);
      type = type_from_name(v.text);
      if (!type) fail("unknown type '" + v.text + "'", v.source);
    } else if (a.key == "default") {
      if (v.kind == Value::Kind::Call) fail("expected a default value", v.source);
      default_text = v;
    } else if (a.key == "description") {
      if (v.kind != Value::Kind::String) fail("expected a quoted description", v.source);
      h.description = v.text;
    } else if (a.key == "cell") {
      if (v.kind != Value::Kind::Call || v.text != "range") fail("unknown cell invariant", v.source);
      if (v.args.size() != 4 || v.args[0].key || v.args[1].key || v.args[0].quoted || v.args[1].quoted) {
        fail("expected range(lo,hi,\"low message\",\"high message\")", v.source);
      }
      RangeSpec r;
      r.lo = to_real(v.args[0].text, v.source);
      r.hi = to_real(v.args[1].text, v.source);
      r.low_msg = to_message(v.args[2], v.source);
      r.high_msg = to_message(v.args[3], v.source);
      if (r.lo > r.hi) fail("range lower bound exceeds upper bound", v.source);
      h.cell = std::move(r);
    } else if (a.key == "col") {
      if (v.kind != Value::Kind::Call || v.text != "unique") fail("unknown column invariant", v.source);
      if (v.args.size() != 1 || v.args[0].key) fail("expected unique(\"message\")", v.source);
      h.col = UniqueSpec{to_message(v.args[0], v.source)};
    } else {
      fail("unknown header key '" + a.key + "'", a.key);
    }
  }
  if (!name) fail("header missing 'name'", "header");
  if (!type) fail("header missing 'type'", "header");
  if (!default_text) fail("header missing 'default'", "header");
  h.name = *name;
  h.type = *type;
  auto d = parse_cell(h.type, default_text->text, default_text->kind == Value::Kind::Bare);
  if (!d) fail("default does not conform to type " + std::string(type_name(h.type)), "default=" + default_text->source);
  h.default_value = std::move(*d.value);
  return h;
}

BmiSpec parse_row(LineLexer& lex) {
  Value v = lex.value();
  if (v.kind != Value::Kind::Call || v.text != "bmi") fail("unknown row invariant", v.source);
  auto args = named_args(v, {"weight", "height", "bmi", "precision"});
  BmiSpec b;
  b.weight_col = to_index(args["weight"], v.source);
  b.height_col = to_index(args["height"], v.source);
  b.bmi_col = to_index(args["bmi"], v.source);
  b.precision = to_precision(args["precision"], v.source);
  if (b.weight_col == b.height_col || b.weight_col == b.bmi_col || b.height_col == b.bmi_col) {
    fail("bmi columns must be distinct", v.source);
  }
  if (!lex.at_end()) lex.fail("unexpected text after row invariant");
  return b;
}

ColSumSpec parse_file(LineLexer& lex) {
  Value v = lex.value();
  if (v.kind != Value::Kind::Call || v.text != "col_sum") fail("unknown file invariant", v.source);
  auto args = named_args(v, {"col", "expected", "precision", "msg"});
  ColSumSpec f;
  f.col = to_index(args["col"], v.source);
  f.expected = to_real(args["expected"], v.source);
  f.precision = to_precision(args["precision"], v.source);
  f.msg = args["msg"];
  if (f.msg.empty()) fail("message must not be empty", v.source);
  if (!lex.at_end()) lex.fail("unexpected text after file invariant");
  return f;
}

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string number(double d) { return render_value(CsvValue::real(d)); }

}  // namespace

std::string SchemaDiagnostic::to_string() const {
  std::string out = line ? "schema line " + std::to_string(line) + ": " : "schema: ";
  out += message;
  if (!token.empty()) out += " (at '" + token + "')";
  return out;
}

SchemaParse parse_schema(std::string_view text) {
  SchemaParse result;
  SchemaDocument doc;
  bool have_settings = false;
  std::size_t row_line = 0;
  std::size_t file_line = 0;
  std::size_t line_no = 0;
  try {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      const std::string_view line = text.substr(start, nl - start);
      start = nl + 1;
      ++line_no;

      LineLexer lex(line);
      if (lex.at_end()) continue;
      if (line.find_first_not_of(" \t\r") != std::string_view::npos &&
          line[line.find_first_not_of(" \t\r")] == '#') {
        continue;
      }
      const std::string directive = lex.word();
      if (directive == "settings") {
        if (have_settings) fail("duplicate settings directive", directive);
        doc.settings = parse_settings(lex);
        have_settings = true;
      } else if (directive == "header") {
        doc.headers.push_back(parse_header(lex));
      } else if (directive == "row") {
        if (doc.row) fail("duplicate row directive", directive);
        doc.row = parse_row(lex);
        row_line = line_no;
      } else if (directive == "file") {
        if (doc.file) fail("duplicate file directive", directive);
        doc.file = parse_file(lex);
        file_line = line_no;
      } else {
        fail("unknown directive '" + directive + "'", directive);
      }
    }
    line_no = 0;
    if (doc.headers.empty()) fail("schema has no headers", "");
    const std::size_t width = doc.headers.size();
    if (doc.row && std::max({doc.row->weight_col, doc.row->height_col, doc.row->bmi_col}) > width) {
      line_no = row_line;
      fail("bmi column index exceeds header count " + std::to_string(width), "row");
    }
    if (doc.file && doc.file->col > width) {
      line_no = file_line;
      fail("col_sum column index exceeds header count " + std::to_string(width), "file");
    }
  } catch (const ParseFailure& f) {
    result.diagnostic = SchemaDiagnostic{line_no, f.message, f.token};
    return result;
  }
  result.document = std::move(doc);
  return result;
}

std::string render_schema(const SchemaDocument& doc) {
  std::ostringstream out;
  const CsvSettings& s = doc.settings;
  out << "settings delimiter=" << quote_string(std::string(1, s.delimiter))
      << " quote=" << quote_string(std::string(1, s.quote))
      << " comment=" << quote_string(s.line_comment ? std::string(1, *s.line_comment) : std::string())
      << " skip_blank=" << (s.skip_blank_lines ? "true" : "false") << " trim=" << (s.trim_unquoted ? "true" : "false")
      << '\n';
  for (const auto& h : doc.headers) {
    out << "header name=" << quote_string(h.name) << " type=" << type_name(h.type)
        << " default=" << quote_string(render_value(h.default_value));
    if (h.description) out << " description=" << quote_string(*h.description);
    if (h.cell) {
      out << " cell=range(" << number(h.cell->lo) << ',' << number(h.cell->hi) << ',' << quote_string(h.cell->low_msg)
          << ',' << quote_string(h.cell->high_msg) << ')';
    }
    if (h.col) out << " col=unique(" << quote_string(h.col->msg) << ')';
    out << '\n';
  }
  if (doc.row) {
    out << "row bmi(weight=" << doc.row->weight_col << ",height=" << doc.row->height_col << ",bmi=" << doc.row->bmi_col
        << ",precision=" << doc.row->precision << ")\n";
  }
  if (doc.file) {
    out << "file col_sum(col=" << doc.file->col << ",expected=" << number(doc.file->expected)
        << ",precision=" << doc.file->precision << ",msg=" << quote_string(doc.file->msg) << ")\n";
  }
  return out.str();
}

Headers SchemaDocument::build_headers() const {
  Headers out;
  out.reserve(headers.size());
  for (const auto& spec : headers) {
    Header h(spec.name, spec.type, spec.default_value);
    if (spec.description) h.set_description(*spec.description);
    if (spec.cell) h.set_cell_inv(make_range_cell_inv(spec.cell->lo, spec.cell->hi, spec.cell->low_msg, spec.cell->high_msg));
    if (spec.col) h.set_col_inv(make_unique_col_inv(spec.col->msg), /*monotone=*/true);
    out.push_back(std::move(h));
  }
  return out;
}

InvariantSuite SchemaDocument::build_suite() const {
  InvariantSuite suite;
  if (row) suite.row_inv = make_bmi_row_inv(row->weight_col, row->height_col, row->bmi_col, row->precision);
  if (file) suite.file_inv = make_col_sum_file_inv(file->col, file->expected, file->precision, file->msg);
  return suite;
}

SchemaDocument example_people_schema() {
  SchemaDocument doc;
  doc.headers.push_back({"Name", CsvType::String, CsvValue::text("Name"), std::nullopt, std::nullopt,
                         UniqueSpec{"repeated names"}});
  doc.headers.push_back({"Age", CsvType::Integer, CsvValue::integer(18), std::nullopt,
                         RangeSpec{18, 65, "below minimal age", "above maximal age"}, std::nullopt});
  doc.headers.push_back({"Weight(Kg)", CsvType::Float, CsvValue::real(40), std::nullopt,
                         RangeSpec{40, 150, "below minimal weight", "above maximal weight"}, std::nullopt});
  doc.headers.push_back({"Height(cm)", CsvType::Float, CsvValue::real(140), std::nullopt,
                         RangeSpec{140, 210, "below minimal height", "above maximal height"}, std::nullopt});
  doc.headers.push_back({"BMI", CsvType::Float, CsvValue::real(15), std::nullopt,
                         RangeSpec{15, 40, "below minimal BMI", "above maximal BMI"}, std::nullopt});
  doc.row = BmiSpec{3, 4, 5, 2};
  return doc;
}

}  // namespace safecsv
