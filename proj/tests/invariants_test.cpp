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

#include "safecsv/invariants.hpp"
#include "testkit/testkit.hpp"

namespace safecsv {
namespace {

CsvValue I(std::int64_t x) { return CsvValue::integer(x); }
CsvValue F(double x) { return CsvValue::real(x); }
CsvValue T(const char* s) { return CsvValue::text(s); }

TEST(ImplicitChecks, CellType) {
  EXPECT_EQ(implicit_cell_check(CsvType::Integer, I(5)), std::nullopt);
  EXPECT_EQ(implicit_cell_check(CsvType::Integer, T("x")), "cell value is not of declared type Integer");
  EXPECT_EQ(implicit_cell_check(CsvType::String, T("")), std::nullopt);
}

TEST(ImplicitChecks, RowWidth) {
  EXPECT_EQ(implicit_row_width_check(5, 4, 1), "CSV row 1 is too short for header: expected 5 columns found 4 columns");
  EXPECT_EQ(implicit_row_width_check(5, 5, 1), std::nullopt);
  EXPECT_EQ(implicit_row_width_check(5, 6, 2), "CSV row 2 is too long for header: expected 5 columns found 6 columns");
}

TEST(BuiltIns, Range) {
  auto inv = make_range_cell_inv(18, 65, "below minimal age", "above maximal age");
  EXPECT_EQ(inv(CsvType::Integer, I(17)), "below minimal age");
  EXPECT_EQ(inv(CsvType::Integer, I(66)), "above maximal age");
  EXPECT_EQ(inv(CsvType::Integer, I(40)), std::nullopt);
  EXPECT_EQ(inv(CsvType::Integer, I(18)), std::nullopt);
  EXPECT_EQ(inv(CsvType::Integer, I(65)), std::nullopt);
}

TEST(BuiltIns, Unique) {
  const Header h("Name", CsvType::String, T(""));
  auto inv = make_unique_col_inv("no duplicate ages are allowed");
  const std::vector<CsvValue> dup{T("a"), T("b"), T("a")};
  const std::vector<CsvValue> distinct{T("a"), T("b"), T("c")};
  EXPECT_EQ(inv(h, dup), "no duplicate ages are allowed");
  EXPECT_EQ(inv(h, distinct), std::nullopt);
  EXPECT_EQ(inv(h, {}), std::nullopt);
}

TEST(BuiltIns, Bmi) {
  const Headers h = testkit::people_headers();
  auto inv = make_bmi_row_inv(3, 4, 5, 2);
  // 70 / 1.75^2 = 22.857142..., 0.0029 away from 22.86.
  const double oracle = 70.0 / (1.75 * 1.75);
  ASSERT_NEAR(oracle, 22.857142857, 1e-9);
  EXPECT_EQ(inv(h, {T("A"), I(30), F(70.0), F(175.0), F(22.86)}), std::nullopt);
  EXPECT_EQ(inv(h, {T("A"), I(30), F(70.0), F(175.0), F(30.0)}), "invalid BMI for given CSV weight and height");
  const Headers three(h.begin(), h.begin() + 3);
  EXPECT_EQ(inv(three, {T("A"), I(30), F(70.0)}), "invalid BMI header");
}

TEST(BuiltIns, ColumnSum) {
  const Headers h{Header("x", CsvType::Float, F(0))};
  EXPECT_EQ(make_col_sum_file_inv(1, 30.0, 2, "m")(h, {{F(10.0)}, {F(20.0)}}), std::nullopt);
  EXPECT_EQ(make_col_sum_file_inv(1, 31.0, 2, "m")(h, {{F(10.0)}, {F(20.0)}}), "m");
  EXPECT_EQ(make_col_sum_file_inv(1, 0.0, 2, "m")(h, {}), std::nullopt);
}

Data people(Matrix m) {
  Data d;
  d.headers = testkit::people_headers();
  d.matrix = std::move(m);
  return d;
}

TEST(CsvInvariantsFailed, PeopleExamples) {
  const Data d = people({
      {T("Bob"), I(30), F(70.0), F(175.0), F(22.86)},
      {T("Ann"), I(40), F(60.0), F(165.0), F(22.04)},
      {T("Carol"), I(17), F(55.0), F(160.0), F(21.48)},
      {T("Bob"), I(50), F(70.0), F(175.0), F(22.86)},
  });
  const auto errors = csv_invariants_failed(d, testkit::people_suite());
  EXPECT_TRUE(errors.count({3, 2, "Invalid cell invariant: below minimal age"}));
  EXPECT_TRUE(errors.count({4, 1, "Invalid col invariant: repeated names"}));
  EXPECT_EQ(errors.size(), 2u);
}

TEST(CsvInvariantsFailed, EmptyMatrixHasNoErrors) {
  const Data d = people({});
  InvariantSuite s = testkit::people_suite();
  s.file_inv = [](const Headers&, const Matrix&) -> Reason { return "always"; };
  EXPECT_TRUE(csv_invariants_failed(d, s).empty());
}

TEST(CsvInvariantsFailed, RowAndFileLocations) {
  Data d = people({{T("A"), I(30), F(70.0), F(175.0), F(30.0)}});
  InvariantSuite s = testkit::people_suite();
  s.file_inv = [](const Headers&, const Matrix&) -> Reason { return "file says no"; };
  const auto errors = csv_invariants_failed(d, s);
  EXPECT_TRUE(errors.count({1, 1, "Invalid row invariant: invalid BMI for given CSV weight and height"}));
  EXPECT_TRUE(errors.count({1, 1, "Invalid file invariant: file says no"}));
}

TEST(CsvInvariantsFailed, SourceRowNumbersAreUsed) {
  Data d = people({{T("A"), I(30), F(70.0), F(175.0), F(22.86)}, {T("B"), I(17), F(70.0), F(175.0), F(22.86)}});
  d.row_numbers = {2, 5};
  const auto errors = csv_invariants_failed(d, testkit::people_suite());
  EXPECT_EQ(errors, (std::set<CsvError>{{5, 2, "Invalid cell invariant: below minimal age"}}));
}

TEST(CsvInvariantsFailed, EmptyReasonStillReported) {
  Data d;
  d.headers.emplace_back("x", CsvType::Integer, I(0), [](CsvType, const CsvValue&) -> Reason { return ""; });
  d.matrix = {{I(1)}};
  const auto errors = csv_invariants_failed(d, {});
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors.begin()->reason, "Invalid cell invariant: (no reason given)");
}

TEST(CsvInvariantsFailed, CellInvariantSkippedOnTypeFailure) {
  int calls = 0;
  Data d;
  d.headers.emplace_back("x", CsvType::Integer, I(0), [&calls](CsvType, const CsvValue&) -> Reason {
    ++calls;
    return std::nullopt;
  });
  d.matrix = {{I(1)}, {T("oops")}, {I(3)}, {F(2.0)}};
  const auto errors = csv_invariants_failed(d, {});
  EXPECT_EQ(calls, 2);
  EXPECT_EQ(errors.size(), 2u);
  EXPECT_TRUE(errors.count({2, 1, "cell value is not of declared type Integer"}));
  EXPECT_TRUE(errors.count({4, 1, "cell value is not of declared type Integer"}));
}

TEST(CsvInvariantsFailed, VacuousSuiteIsSound) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    auto c = testkit::random_oracle_case(rng);
    Data d;
    for (std::size_t j = 0; j < c.types.size(); ++j) d.headers.emplace_back("h", c.types[j], zero_value(c.types[j]));
    for (auto& row : c.matrix) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (!row[j].conforms_to(c.types[j])) row[j] = zero_value(c.types[j]);
      }
    }
    d.matrix = c.matrix;
    EXPECT_TRUE(csv_invariants_failed(d, {}).empty());
  }
}

TEST(CsvInvariantsFailed, MatchesNaiveChecker) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 300; ++iter) {
    const auto c = testkit::random_oracle_case(rng);
    ASSERT_EQ(csv_invariants_failed(c.data(), c.suite()), testkit::naive_check(c)) << "case " << iter;
  }
}

TEST(CsvInvariantsFailed, UserReasonsCarryExactlyOnePrefix) {
  std::mt19937_64 rng(29);
  const std::string prefixes[] = {std::string(kCellInvPrefix), std::string(kRowInvPrefix),
                                  std::string(kColInvPrefix), std::string(kFileInvPrefix)};
  for (int iter = 0; iter < 300; ++iter) {
    const auto c = testkit::random_oracle_case(rng);
    for (const auto& e : csv_invariants_failed(c.data(), c.suite())) {
      if (e.reason.starts_with("cell value is not of declared type")) continue;
      int matches = 0;
      for (const auto& p : prefixes) {
        if (e.reason.starts_with(p)) ++matches;
      }
      EXPECT_EQ(matches, 1) << e.reason;
    }
  }
}

TEST(CsvInvariantsFailed, DroppingFirstFailingRowMovesColumnErrorLater) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int iter = 0; iter < 2000 && checked < 200; ++iter) {
    auto c = testkit::random_oracle_case(rng);
    c.row_numbers.clear();
    c.bmi.reset();
    c.sum.reset();
    const auto before = csv_invariants_failed(c.data(), c.suite());
    for (const auto& e : before) {
      if (!e.reason.starts_with(kColInvPrefix)) continue;
      auto smaller = c;
      smaller.matrix.erase(smaller.matrix.begin() + static_cast<std::ptrdiff_t>(e.row_no - 1));
      // Keep the original numbering for the remaining rows.
      for (std::size_t i = 0; i < c.matrix.size(); ++i) {
        if (i + 1 != e.row_no) smaller.row_numbers.push_back(i + 1);
      }
      for (const auto& after : csv_invariants_failed(smaller.data(), smaller.suite())) {
        if (after.col_no == e.col_no && after.reason == e.reason) {
          EXPECT_GT(after.row_no, e.row_no);
        }
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace safecsv
