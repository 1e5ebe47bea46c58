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
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "safecsv/backend.hpp"
#include "safecsv/model.hpp"

namespace safecsv {

enum class FileStatus { Valid, Missing, IsDirectory, NotReadable };

std::string_view file_status_name(FileStatus s) noexcept;

/// Observes `path` without side effects.
FileStatus file_status(const std::filesystem::path& path);

/// Result of a read. When `success` is false, `errors` and `data.matrix`
/// are empty and the facade's last_error() says why.
struct ReadOutcome {
  bool success = false;
  /// Wrong-width rows, located at (row, header count).
  std::set<CsvError> errors;
  Data data;
  /// Number of data rows the backend produced (accepted plus rejected).
  std::size_t raw_rows = 0;
};

/// Low-level entry points: file status, read, write and the last IO error.
///
/// An instance is single-threaded state; use one per thread.
class CsvIo {
 public:
  /// Parses `path` with `backend`, drops wrong-width rows into
  /// `ReadOutcome::errors`, fills comma-sequences with column defaults, and
  /// types each cell. Cells that fail their type are kept as Text so the
  /// invariant pass can report them.
  ///
  /// With `has_header_line`, the first row is consumed as column names; any
  /// header whose name is empty takes the name from that row, in which case
  /// the row must have exactly one name per header.
  ReadOutcome read(const std::filesystem::path& path, ParserBackend& backend, const CsvSettings& settings,
                   const Headers& headers, bool has_header_line = true);

  /// Same as read() over an already open stream.
  ReadOutcome read(std::istream& in, ParserBackend& backend, const CsvSettings& settings, const Headers& headers,
                   bool has_header_line = true);

  /// Writes the header line and then every row. Returns false and sets
  /// last_error() on failure.
  bool write(const std::filesystem::path& path, const Data& d);

  const Reason& last_error() const noexcept { return error_; }

 private:
  Reason error_;
};

/// Writes `d` to `out` with the quoting rules of CsvIo::write.
void write_csv(std::ostream& out, const Data& d);

/// Quotes a single field if reading it back would otherwise change it.
std::string quote_field(std::string_view text, const CsvSettings& s);

}  // namespace safecsv
