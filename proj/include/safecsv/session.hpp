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

#include <filesystem>
#include <optional>
#include <set>
#include <vector>

#include "safecsv/backend.hpp"
#include "safecsv/invariants.hpp"
#include "safecsv/io.hpp"
#include "safecsv/model.hpp"

namespace safecsv {

/// Stateful convenience layer: load, inspect, print.
///
/// After every operation, a strict session with failures holds an empty
/// matrix; the failures stay in pos() for diagnosis.
class Session {
 public:
  /// Loads `path` against explicit headers and runs every invariant.
  void load_csv(const std::filesystem::path& path, BackendKind backend, const CsvSettings& settings,
                const Headers& headers, const InvariantSuite& suite, bool strict, bool has_header_line = true);

  /// Loads a headered file whose column names come from its first row.
  /// Defaults are the type-canonical zero values.
  void load_simple_headers_csv(const std::filesystem::path& path, BackendKind backend,
                               const std::vector<CsvType>& types, bool strict);

  /// Writes the loaded data to `out`, which must not be the loaded file.
  bool print_csv(const std::filesystem::path& out);

  const std::optional<std::filesystem::path>& file() const noexcept { return file_; }
  BackendKind backend() const noexcept { return backend_; }
  /// Low-level (IO and usage) error of the last operation.
  const Reason& ferr() const noexcept { return ferr_; }
  bool strict() const noexcept { return strict_; }
  /// Structural and invariant failures of the last load.
  const std::set<CsvError>& pos() const noexcept { return pos_; }
  /// The structural (row width) subset of pos().
  const std::set<CsvError>& structural_errors() const noexcept { return structural_; }
  const Data& data() const noexcept { return data_; }
  bool loaded() const noexcept { return loaded_; }

 private:
  void reset(BackendKind backend, bool strict);

  std::optional<std::filesystem::path> file_;
  BackendKind backend_ = BackendKind::Native;
  Reason ferr_;
  bool strict_ = false;
  std::set<CsvError> pos_;
  std::set<CsvError> structural_;
  Data data_;
  bool loaded_ = false;
};

}  // namespace safecsv
