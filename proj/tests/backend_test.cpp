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

#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <sstream>

#include "safecsv/backend.hpp"
#include "testkit/testkit.hpp"

namespace safecsv {
namespace {

using testkit::parse_all;

RawField U(std::string s) { return RawField{std::move(s), false}; }
RawField Q(std::string s) { return RawField{std::move(s), true}; }

class BothBackends : public ::testing::TestWithParam<BackendKind> {
 protected:
  std::unique_ptr<ParserBackend> backend() const {
    if (GetParam() == BackendKind::Fast) return std::make_unique<FastBackend>(16);
    return make_backend(GetParam());
  }
  testkit::ParseResult parse(const std::string& text, const CsvSettings& s = {}) const {
    auto b = backend();
    return parse_all(*b, text, s);
  }
};

TEST_P(BothBackends, PlainRows) {
  const auto r = parse("a,b\n1,2\n");
  EXPECT_EQ(r.rows, (std::vector<RawRow>{{U("a"), U("b")}, {U("1"), U("2")}}));
  EXPECT_EQ(r.error, std::nullopt);
}

TEST_P(BothBackends, QuotedDelimiter) {
  EXPECT_EQ(parse("\"x,y\",z").rows, (std::vector<RawRow>{{Q("x,y"), U("z")}}));
}

TEST_P(BothBackends, DoubledQuotesAndEmbeddedNewline) {
  // Same result as Python's csv.reader on these bytes.
  const auto r = parse("\"he said \"\"hi\"\"\nnext\",2");
  EXPECT_EQ(r.rows, (std::vector<RawRow>{{Q("he said \"hi\"\nnext"), U("2")}}));
}

TEST_P(BothBackends, CommentLines) {
  CsvSettings s;
  s.line_comment = '#';
  EXPECT_EQ(parse("# note\na,b", s).rows, (std::vector<RawRow>{{U("a"), U("b")}}));
  EXPECT_EQ(parse("  # indented\na", s).rows, (std::vector<RawRow>{{U("a")}}));
  EXPECT_EQ(parse("a,#b", s).rows, (std::vector<RawRow>{{U("a"), U("#b")}}));
  EXPECT_EQ(parse("\"x\n# not a comment\"", s).rows, (std::vector<RawRow>{{Q("x\n# not a comment")}}));
  EXPECT_EQ(parse("# note\na", CsvSettings{}).rows, (std::vector<RawRow>{{U("# note")}, {U("a")}}));
}

TEST_P(BothBackends, BlankLines) {
  EXPECT_EQ(parse("a\n\n \t\nb\n").rows, (std::vector<RawRow>{{U("a")}, {U("b")}}));
  CsvSettings s;
  s.skip_blank_lines = false;
  EXPECT_EQ(parse("a\n\n \t\nb\n", s).rows, (std::vector<RawRow>{{U("a")}, {U("")}, {U("")}, {U("b")}}));
  s.trim_unquoted = false;
  EXPECT_EQ(parse("a\n \t\n", s).rows, (std::vector<RawRow>{{U("a")}, {U(" \t")}}));
}

TEST_P(BothBackends, LineTerminators) {
  const std::vector<RawRow> want{{U("a"), U("b")}, {U("c")}, {U("d")}};
  EXPECT_EQ(parse("a,b\r\nc\rd\n").rows, want);
  EXPECT_EQ(parse("a,b\nc\r\nd").rows, want);
  EXPECT_EQ(parse("a,b\rc\rd\r").rows, want);
  EXPECT_EQ(parse("\"1\r\n2\"\r").rows, (std::vector<RawRow>{{Q("1\r\n2")}}));
}

TEST_P(BothBackends, ByteOrderMarkSkipped) {
  EXPECT_EQ(parse("\xEF\xBB\xBF" "a,b\n").rows, (std::vector<RawRow>{{U("a"), U("b")}}));
  EXPECT_EQ(parse("\xEF\xBB\xBF").rows, (std::vector<RawRow>{}));
}

TEST_P(BothBackends, TrimmingAndTails) {
  EXPECT_EQ(parse("  a  , \"b \" x ,c").rows, (std::vector<RawRow>{{U("a"), Q("b  x"), U("c")}}));
  CsvSettings s;
  s.trim_unquoted = false;
  EXPECT_EQ(parse("  a  , \"b\" ", s).rows, (std::vector<RawRow>{{U("  a  "), U(" \"b\" ")}}));
}

TEST_P(BothBackends, TabDelimiterIsNeverTrimmed) {
  CsvSettings s;
  s.delimiter = '\t';
  EXPECT_EQ(parse("\ta\t\t b \n", s).rows, (std::vector<RawRow>{{U(""), U("a"), U(""), U("b")}}));
  s.trim_unquoted = false;
  EXPECT_EQ(parse("\t12\n", s).rows, (std::vector<RawRow>{{U(""), U("12")}}));
}

TEST_P(BothBackends, EmptyFieldsAndTrailingDelimiter) {
  EXPECT_EQ(parse("a,,\"\",\n").rows, (std::vector<RawRow>{{U("a"), U(""), Q(""), U("")}}));
}

TEST_P(BothBackends, OtherDialect) {
  CsvSettings s;
  s.delimiter = ';';
  s.quote = '\'';
  EXPECT_EQ(parse("'a;b';'it''s';\"x\"", s).rows, (std::vector<RawRow>{{Q("a;b"), Q("it's"), U("\"x\"")}}));
}

TEST_P(BothBackends, UnterminatedQuote) {
  const auto r = parse("\"unterminated");
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(r.error, "unterminated quoted field starting at line 1");
  const auto later = parse("a\nb\n\"x\ny");
  EXPECT_EQ(later.rows, (std::vector<RawRow>{{U("a")}, {U("b")}}));
  EXPECT_EQ(later.error, "unterminated quoted field starting at line 3");
}

TEST_P(BothBackends, InvalidUtf8) {
  const auto r = parse("ok\n\"multi\nline\",\xC3\x28\n");
  EXPECT_EQ(r.rows, (std::vector<RawRow>{{U("ok")}}));
  EXPECT_EQ(r.error, "invalid UTF-8 in record starting at line 2");
  EXPECT_EQ(parse("caf\xC3\xA9,\xE2\x82\xAC").error, std::nullopt);
  EXPECT_TRUE(parse("\xED\xA0\x80").error);  // surrogate
  EXPECT_TRUE(parse("\xC0\xAF").error);      // overlong
}

TEST_P(BothBackends, ErrorClearsOnNextParseAndOnClear) {
  auto b = backend();
  parse_all(*b, "\"open", {});
  EXPECT_TRUE(b->last_error());
  b->clear();
  EXPECT_EQ(b->last_error(), std::nullopt);
  parse_all(*b, "\"open", {});
  parse_all(*b, "a,b", {});
  EXPECT_EQ(b->last_error(), std::nullopt);
}

TEST_P(BothBackends, InvalidSettingsReported) {
  CsvSettings s;
  s.quote = ',';
  const auto r = parse("a,b", s);
  EXPECT_TRUE(r.rows.empty());
  ASSERT_TRUE(r.error);
  EXPECT_TRUE(r.error->starts_with("invalid CSV settings: "));
}

TEST_P(BothBackends, Deterministic) {
  std::mt19937_64 rng(41);
  auto b = backend();
  for (int i = 0; i < 100; ++i) {
    const auto f = testkit::random_dialect_file(rng);
    EXPECT_EQ(parse_all(*b, f.bytes, f.settings), parse_all(*b, f.bytes, f.settings));
  }
}

TEST_P(BothBackends, IteratorWalksEveryRow) {
  auto b = backend();
  std::istringstream in("a\nb\nc\n");
  auto cursor = b->parse(in, {});
  std::string seen;
  for (const RawRow& row : cursor) seen += row.at(0).text;
  EXPECT_EQ(seen, "abc");
}

INSTANTIATE_TEST_SUITE_P(Backends, BothBackends, ::testing::Values(BackendKind::Native, BackendKind::Fast),
                         [](const auto& info) { return std::string(backend_name(info.param)); });

TEST(Backends, AgreeOnRandomDialectFiles) {
  std::mt19937_64 rng(43);
  NativeBackend native;
  for (int i = 0; i < 300; ++i) {
    const auto f = testkit::random_dialect_file(rng);
    FastBackend fast(16 + i % 48);
    ASSERT_EQ(parse_all(native, f.bytes, f.settings), parse_all(fast, f.bytes, f.settings)) << "file " << i;
  }
}

TEST(FastBackend, BufferStaysNearTheLargestRecord) {
  std::string text;
  for (int i = 0; i < 50000; ++i) text += "row" + std::to_string(i) + ",\"quoted, text\",3.25\n";
  FastBackend fast(4096);
  const auto r = parse_all(fast, text, {});
  EXPECT_EQ(r.rows.size(), 50000u);
  EXPECT_EQ(r.error, std::nullopt);
  EXPECT_GT(text.size(), 1000000u);
  EXPECT_LE(fast.peak_buffer_bytes(), 4096u);
}

TEST(FastBackend, GrowsForOneLongRecord) {
  const std::string big(100000, 'x');
  FastBackend fast(1024);
  const auto r = parse_all(fast, "a\n\"" + big + "\"\nb\n", {});
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[1][0].text, big);
  EXPECT_GE(fast.peak_buffer_bytes(), big.size());
  EXPECT_LE(fast.peak_buffer_bytes(), 4 * big.size());
}

TEST(BackendNames, RoundTrip) {
  EXPECT_EQ(backend_from_name("native"), BackendKind::Native);
  EXPECT_EQ(backend_from_name("fast"), BackendKind::Fast);
  EXPECT_EQ(backend_from_name("univocity"), std::nullopt);
  EXPECT_EQ(make_backend(BackendKind::Fast)->name(), "fast");
}

}  // namespace
}  // namespace safecsv
