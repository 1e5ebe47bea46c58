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

#include <random>
#include <sstream>

#include "safecsv/io.hpp"
#include "testkit/testkit.hpp"

namespace safecsv {
namespace {

namespace fs = std::filesystem;
using testkit::TempDir;

Headers two_ints() {
  return {Header("a", CsvType::Integer, CsvValue::integer(0)), Header("b", CsvType::Integer, CsvValue::integer(0))};
}

TEST(FileStatus, Variants) {
  TempDir dir;
  testkit::spit(dir / "f.csv", "a\n");
  EXPECT_EQ(file_status(dir / "f.csv"), FileStatus::Valid);
  EXPECT_EQ(file_status(dir.path()), FileStatus::IsDirectory);
  EXPECT_EQ(file_status(dir / "nope.csv"), FileStatus::Missing);
  EXPECT_EQ(file_status(dir / "nope.csv"), file_status(dir / "nope.csv"));
  EXPECT_EQ(file_status_name(FileStatus::IsDirectory), "IsDirectory");
}

TEST(CsvIoRead, ShortRowIsReportedAndDropped) {
  NativeBackend backend;
  CsvIo io;
  const auto out = io.read(testkit::data_path("people.csv"), backend, {}, testkit::people_headers());
  ASSERT_TRUE(out.success);
  EXPECT_TRUE(out.errors.count({1, 5, "CSV row 1 is too short for header: expected 5 columns found 4 columns"}));
  EXPECT_EQ(out.errors.size(), 1u);
  EXPECT_EQ(out.data.matrix.size(), 6u);
  EXPECT_EQ(out.data.matrix[0][0], CsvValue::text("Bob"));
  EXPECT_EQ(out.data.source_row(0), 2u);
  EXPECT_EQ(out.raw_rows, 7u);
}

TEST(CsvIoRead, DefaultAppliedToCommaSequence) {
  NativeBackend backend;
  CsvIo io;
  std::istringstream in("Name,Age,Weight(Kg),Height(cm),BMI\nBob,,70.0,175.0,22.86\n");
  const auto out = io.read(in, backend, {}, testkit::people_headers());
  ASSERT_TRUE(out.success);
  ASSERT_EQ(out.data.matrix.size(), 1u);
  EXPECT_EQ(out.data.matrix[0][1], CsvValue::integer(18));
}

TEST(CsvIoRead, QuotedEmptyStringIsNotADefault) {
  NativeBackend backend;
  CsvIo io;
  const Headers h{Header("n", CsvType::String, CsvValue::text("dflt")), Header("m", CsvType::String, CsvValue::text("d2"))};
  std::istringstream in("\"\",\n");
  const auto out = io.read(in, backend, {}, h, false);
  ASSERT_TRUE(out.success);
  EXPECT_EQ(out.data.matrix, (Matrix{{CsvValue::text(""), CsvValue::text("d2")}}));
}

TEST(CsvIoRead, IntegerGrid) {
  FastBackend backend;
  CsvIo io;
  std::istringstream in("a,b\n1,2\n3,4\n");
  const auto out = io.read(in, backend, {}, two_ints());
  ASSERT_TRUE(out.success);
  EXPECT_TRUE(out.errors.empty());
  auto I = [](std::int64_t x) { return CsvValue::integer(x); };
  EXPECT_EQ(out.data.matrix, (Matrix{{I(1), I(2)}, {I(3), I(4)}}));
}

TEST(CsvIoRead, BadCellKeptAsText) {
  NativeBackend backend;
  CsvIo io;
  std::istringstream in("a,b\nx,2\n");
  const auto out = io.read(in, backend, {}, two_ints());
  ASSERT_TRUE(out.success);
  EXPECT_EQ(out.data.matrix[0][0], CsvValue::text("x"));
}

TEST(CsvIoRead, LongRowIsStructural) {
  NativeBackend backend;
  CsvIo io;
  std::istringstream in("a,b\n1,2,3\n4,5\n");
  const auto out = io.read(in, backend, {}, two_ints());
  ASSERT_TRUE(out.success);
  EXPECT_EQ(out.errors, (std::set<CsvError>{{1, 2, "CSV row 1 is too long for header: expected 2 columns found 3 columns"}}));
  EXPECT_EQ(out.data.matrix.size(), 1u);
}

TEST(CsvIoRead, UnterminatedQuoteFailsCleanly) {
  NativeBackend backend;
  CsvIo io;
  std::istringstream in("a,b\n1,2\n3,\"4\n");
  const auto out = io.read(in, backend, {}, two_ints());
  EXPECT_FALSE(out.success);
  EXPECT_TRUE(out.errors.empty());
  EXPECT_TRUE(out.data.matrix.empty());
  EXPECT_EQ(io.last_error(), "unterminated quoted field starting at line 3");
}

TEST(CsvIoRead, MissingFileAndErrorReset) {
  TempDir dir;
  NativeBackend backend;
  CsvIo io;
  const auto missing = dir / "absent.csv";
  EXPECT_FALSE(io.read(missing, backend, {}, two_ints()).success);
  EXPECT_EQ(io.last_error(), "file not found: " + missing.string());
  testkit::spit(dir / "ok.csv", "a,b\n1,2\n");
  EXPECT_TRUE(io.read(dir / "ok.csv", backend, {}, two_ints()).success);
  EXPECT_EQ(io.last_error(), std::nullopt);
  EXPECT_FALSE(io.read(dir.path(), backend, {}, two_ints()).success);
  EXPECT_EQ(io.last_error(), "path is a directory: " + dir.path().string());
}

TEST(CsvIoRead, HeaderlessFile) {
  NativeBackend backend;
  CsvIo io;
  std::istringstream in("1,2\n");
  const auto out = io.read(in, backend, {}, two_ints(), false);
  ASSERT_TRUE(out.success);
  EXPECT_EQ(out.data.matrix.size(), 1u);
}

TEST(CsvIoRead, EmptyInputHasNoHeaderRow) {
  NativeBackend backend;
  CsvIo io;
  std::istringstream in("");
  EXPECT_FALSE(io.read(in, backend, {}, two_ints()).success);
  EXPECT_EQ(io.last_error(), "missing header row");
}

TEST(QuoteField, OnlyWhenNeeded) {
  const CsvSettings s;
  EXPECT_EQ(quote_field("a,b", s), "\"a,b\"");
  EXPECT_EQ(quote_field("plain", s), "plain");
  EXPECT_EQ(quote_field("say \"x\"", s), "\"say \"\"x\"\"\"");
  EXPECT_EQ(quote_field("", s), "\"\"");
  EXPECT_EQ(quote_field(" pad", s), "\" pad\"");
  EXPECT_EQ(quote_field("two\nlines", s), "\"two\nlines\"");
}

TEST(QuoteField, ReparsesAsOneField) {
  NativeBackend backend;
  const auto r = testkit::parse_all(backend, quote_field("a,b", {}), {});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0], (RawRow{RawField{"a,b", true}}));
}

TEST(CsvIoWrite, RoundTripsRandomData) {
  std::mt19937_64 rng(47);
  for (int iter = 0; iter < 200; ++iter) {
    const Data d = testkit::random_roundtrip_data(rng);
    std::ostringstream out;
    write_csv(out, d);
    for (BackendKind k : {BackendKind::Native, BackendKind::Fast}) {
      auto backend = make_backend(k);
      CsvIo io;
      std::istringstream in(out.str());
      const auto back = io.read(in, *backend, d.settings, d.headers);
      ASSERT_TRUE(back.success) << io.last_error().value_or("") << "\n" << out.str();
      ASSERT_TRUE(back.errors.empty()) << out.str();
      ASSERT_EQ(back.data.matrix, d.matrix) << out.str();
    }
  }
}

TEST(CsvIoWrite, FileRoundTripAndUnwritablePath) {
  TempDir dir;
  Data d;
  d.headers = two_ints();
  d.matrix = {{CsvValue::integer(1), CsvValue::integer(-2)}};
  CsvIo io;
  ASSERT_TRUE(io.write(dir / "out.csv", d));
  EXPECT_EQ(testkit::slurp(dir / "out.csv"), "a,b\n1,-2\n");
  EXPECT_FALSE(io.write(dir / "no" / "such" / "dir.csv", d));
  EXPECT_TRUE(io.last_error());
  EXPECT_TRUE(io.write(dir / "again.csv", d));
  EXPECT_EQ(io.last_error(), std::nullopt);
}

TEST(CsvIoRead, AccountingHoldsOnRandomFiles) {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 300; ++iter) {
    const auto f = testkit::random_dialect_file(rng);
    NativeBackend backend;
    const auto raw = testkit::parse_all(backend, f.bytes, f.settings);
    const std::size_t width = raw.rows.empty() ? 1 : raw.rows[0].size();
    Headers h;
    for (std::size_t c = 0; c < width; ++c) h.emplace_back("c", CsvType::String, CsvValue::text(""));
    CsvIo io;
    std::istringstream in(f.bytes);
    const auto out = io.read(in, backend, f.settings, h, false);
    if (raw.error) {
      EXPECT_FALSE(out.success);
      EXPECT_TRUE(out.errors.empty());
      EXPECT_TRUE(out.data.matrix.empty());
      continue;
    }
    ASSERT_TRUE(out.success);
    EXPECT_EQ(out.raw_rows, raw.rows.size());
    EXPECT_EQ(out.errors.size() + out.data.matrix.size(), raw.rows.size());
  }
}

}  // namespace
}  // namespace safecsv
