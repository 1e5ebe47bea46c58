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
#include <istream>
#include <iterator>
#include <memory>
#include <optional>
#include <string_view>

#include "safecsv/model.hpp"

namespace safecsv {

enum class BackendKind { Native, Fast };

std::string_view backend_name(BackendKind k) noexcept;
std::optional<BackendKind> backend_from_name(std::string_view name) noexcept;

/// Pull-based producer of raw rows. Returns false at end of input or after
/// a low-level error (which the owning backend then reports).
class RowSource {
 public:
  virtual ~RowSource() = default;
  virtual bool next(RawRow& row) = 0;
};

/// Streaming view over the rows of one parse.
///
/// Borrows the backend and the input stream; both must outlive the cursor.
class RowCursor {
 public:
  explicit RowCursor(std::unique_ptr<RowSource> src) : src_(std::move(src)) {}

  bool next(RawRow& row) { return src_ && src_->next(row); }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = RawRow;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(RowCursor* c) : cursor_(c) { ++*this; }

    const RawRow& operator*() const { return row_; }
    const RawRow* operator->() const { return &row_; }
    iterator& operator++() {
      if (cursor_ && !cursor_->next(row_)) cursor_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return cursor_ == nullptr; }

   private:
    RowCursor* cursor_ = nullptr;
    RawRow row_;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  std::unique_ptr<RowSource> src_;
};

/// A pluggable low-level CSV engine.
///
/// Dialect rules shared by every implementation:
///  - UTF-8 input; a leading byte-order mark is skipped.
///  - CRLF, LF and lone CR terminate records; a final terminator does not
///    start an extra row.
///  - A field starting with the quote character is quoted; quotes inside are
///    doubled; quoted fields may span lines. Text after the closing quote is
///    appended verbatim.
///  - At record start, a line whose first non-blank character is the comment
///    character is skipped; lines holding only spaces and tabs are skipped
///    when `skip_blank_lines`, otherwise they yield one unquoted field.
///  - With `trim_unquoted`, spaces and tabs around unquoted text (and after a
///    closing quote) are dropped.
///
/// An instance runs one parse at a time.
class ParserBackend {
 public:
  virtual ~ParserBackend() = default;

  virtual std::string_view name() const noexcept = 0;

  /// Starts a parse. Clears the previous error and records `settings`.
  RowCursor parse(std::istream& in, const CsvSettings& settings);

  /// Error from the most recent parse, including a 1-based line number.
  const Reason& last_error() const noexcept { return error_; }
  void clear() noexcept { error_.reset(); }
  const CsvSettings& settings() const noexcept { return settings_; }

 protected:
  virtual std::unique_ptr<RowSource> open(std::istream& in, const CsvSettings& settings,
                                          Reason& error) = 0;

 private:
  Reason error_;
  CsvSettings settings_;
};

/// Character-at-a-time state machine over the stream buffer.
class NativeBackend final : public ParserBackend {
 public:
  std::string_view name() const noexcept override { return "native"; }

 protected:
  std::unique_ptr<RowSource> open(std::istream& in, const CsvSettings& settings, Reason& error) override;
};

/// Block reader that scans raw bytes for delimiters and quotes and copies
/// whole spans into fields. The block buffer grows only to fit the largest
/// record.
class FastBackend final : public ParserBackend {
 public:
  static constexpr std::size_t kDefaultBlockSize = 64 * 1024;

  explicit FastBackend(std::size_t block_size = kDefaultBlockSize) : block_size_(block_size) {}

  std::string_view name() const noexcept override { return "fast"; }

  /// Largest buffer size reached by the most recent parse.
  std::size_t peak_buffer_bytes() const noexcept { return peak_buffer_; }

 protected:
  std::unique_ptr<RowSource> open(std::istream& in, const CsvSettings& settings, Reason& error) override;

 private:
  std::size_t block_size_;
  std::size_t peak_buffer_ = 0;
};

std::unique_ptr<ParserBackend> make_backend(BackendKind k);

namespace detail {

/// Validates a completed row; on bad UTF-8 fills `error` and returns false.
bool check_row_encoding(const RawRow& row, std::size_t record_line, Reason& error);

bool valid_utf8(std::string_view s) noexcept;

bool is_ascii(std::string_view s) noexcept;

}  // namespace detail

}  // namespace safecsv
