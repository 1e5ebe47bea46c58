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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "safecsv/backend.hpp"
#include "safecsv/schema.hpp"

namespace safecsv {

/// Line-split reader with no quoting, trimming or comment support. Stands in
/// for a minimal standard-library CSV reader in timing comparisons.
class NaiveLineBackend final : public ParserBackend {
 public:
  std::string_view name() const noexcept override { return "naive-baseline"; }

 protected:
  std::unique_ptr<RowSource> open(std::istream& in, const CsvSettings& settings, Reason& error) override;
};

/// Deterministic CSV text with a header line and `rows` data rows. Every
/// cell conforms to its type and lies inside any declared range; unique
/// columns get distinct values and a bmi row check is satisfied.
std::string gen_csv_text(std::size_t rows, const SchemaDocument& schema, std::uint64_t seed);

/// Writes gen_csv_text() to `out`. Returns the IO failure, if any.
Reason gen_csv(std::size_t rows, const SchemaDocument& schema, std::uint64_t seed, const std::filesystem::path& out);

struct BenchOptions {
  std::vector<std::size_t> row_counts{100, 1000, 35000};
  std::vector<BackendKind> backends{BackendKind::Native, BackendKind::Fast};
  unsigned repetitions = 5;
  std::uint64_t seed = 7;
  bool include_baseline = true;
  /// Where generated inputs go; a fresh temporary directory when empty.
  std::filesystem::path work_dir;
};

struct BenchRow {
  std::string backend;
  std::size_t rows = 0;
  unsigned reps = 0;
  double median_ms = 0;
  double rows_per_sec = 0;
  /// Set when the measurement could not be taken.
  std::optional<std::string> failure;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  const BenchRow* find(std::string_view backend, std::size_t rows) const;

  /// baseline median / fast median at `rows`, if both were measured.
  std::optional<double> fast_vs_baseline(std::size_t rows) const;

  /// backend,rows,reps,median_ms,rows_per_sec
  std::string to_csv() const;
  std::string to_table() const;
};

/// Times parse + load + implicit checks for every (engine, row count).
/// Throws std::invalid_argument when repetitions < 3 or a row count is 0.
BenchReport run_bench(const BenchOptions& options);

struct LoadTiming {
  double median_ms = 0;
  Reason failure;
};

/// Median parse + load + implicit-check time per engine over `path`. The
/// engines alternate within each of the `reps` rounds, so slow drift in the
/// machine hits all of them alike.
std::vector<LoadTiming> time_loads(const std::filesystem::path& path, const std::vector<ParserBackend*>& engines,
                                   const SchemaDocument& schema, unsigned reps);

/// Median time in milliseconds of `reps` parse + load + implicit-check
/// passes over `path`.
double time_load(const std::filesystem::path& path, ParserBackend& backend, const SchemaDocument& schema,
                 unsigned reps, Reason& failure);

}  // namespace safecsv
