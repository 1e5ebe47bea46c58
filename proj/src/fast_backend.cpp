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

#include <algorithm>
#include <array>
#include <cstring>
#include <string>
#include <vector>

#include "safecsv/backend.hpp"

namespace safecsv {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

// Records are scanned straight out of a byte buffer. When a record runs
// past the buffered bytes the scan is abandoned, the partial record is moved
// to the front, more input is read, and the record is scanned again.
class FastSource final : public RowSource {
 public:
  FastSource(std::istream& in, const CsvSettings& s, Reason& error, std::size_t block,
             std::size_t& peak)
      : in_(in), s_(s), error_(error), block_(std::max<std::size_t>(block, 16)), peak_(peak) {
    buf_.resize(block_);
    peak_ = buf_.size();
    stop_.fill(false);
    stop_[static_cast<unsigned char>(s_.delimiter)] = true;
    stop_['\r'] = true;
    stop_['\n'] = true;
  }

  bool next(RawRow& row) override;

 private:
  enum class Scan { Row, Skipped, End, NeedMore, Error };

  Scan scan(RawRow& row, std::size_t& used);
  bool refill();

  const char* find_stop(const char* p, const char* end) const {
    while (p < end && !stop_[static_cast<unsigned char>(*p)]) ++p;
    return p;
  }

  static std::size_t count_lines(const char* p, const char* end) {
    std::size_t n = 0;
    for (; p < end; ++p) {
      if (*p == '\n') {
        ++n;
      } else if (*p == '\r') {
        ++n;
        if (p + 1 < end && p[1] == '\n') ++p;
      }
    }
    return n;
  }

  std::istream& in_;
  CsvSettings s_;
  Reason& error_;
  std::size_t block_;
  std::size_t& peak_;
  std::array<bool, 256> stop_{};

  std::vector<char> buf_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  bool eof_ = false;
  bool started_ = false;
  bool done_ = false;
  std::size_t line_ = 1;

  // Set by scan(): bytes and line terminators consumed by the current record,
  // and the line on which an unterminated quote opened.
  std::size_t consumed_ = 0;
  std::size_t lines_ = 0;
  std::size_t quote_line_ = 0;
};

bool FastSource::refill() {
  if (eof_) return false;
  if (pos_ > 0) {
    std::memmove(buf_.data(), buf_.data() + pos_, end_ - pos_);
    end_ -= pos_;
    pos_ = 0;
  }
  if (end_ == buf_.size()) {
    buf_.resize(buf_.size() * 2);
    peak_ = std::max(peak_, buf_.size());
  }
  in_.read(buf_.data() + end_, static_cast<std::streamsize>(buf_.size() - end_));
  const auto got = static_cast<std::size_t>(in_.gcount());
  end_ += got;
  if (!in_) eof_ = true;
  return true;
}

FastSource::Scan FastSource::scan(RawRow& row, std::size_t& used) {
  const char* const begin = buf_.data() + pos_;
  const char* const end = buf_.data() + end_;
  const char* q = begin;
  const char quote = s_.quote;
  const char delim = s_.delimiter;
  const bool trim = s_.trim_unquoted;
  lines_ = 0;
  used = 0;

  auto field_at = [&](std::size_t i) -> RawField& {
    if (i == row.size()) row.emplace_back();
    return row[i];
  };
  // Consumes the terminator at q. Needs one byte of lookahead after CR.
  auto take_eol = [&]() -> bool {
    if (*q == '\r') {
      if (q + 1 == end && !eof_) return false;
      ++q;
      if (q < end && *q == '\n') ++q;
    } else {
      ++q;
    }
    ++lines_;
    return true;
  };

  const char* lead = q;
  while (q < end && is_blank(*q) && *q != delim) ++q;
  if (q == end) {
    if (!eof_) return Scan::NeedMore;
    consumed_ = static_cast<std::size_t>(q - begin);
    if (q == lead || s_.skip_blank_lines) return Scan::End;
    RawField& f = field_at(used++);
    f.quoted = false;
    f.text.assign(trim ? q : lead, q);
    return Scan::Row;
  }
  if (s_.line_comment && *q == *s_.line_comment) {
    const char* e = q;
    while (e < end && *e != '\r' && *e != '\n') ++e;
    if (e == end) {
      if (!eof_) return Scan::NeedMore;
      consumed_ = static_cast<std::size_t>(e - begin);
      return Scan::End;
    }
    q = e;
    if (!take_eol()) return Scan::NeedMore;
    consumed_ = static_cast<std::size_t>(q - begin);
    return Scan::Skipped;
  }
  if (*q == '\r' || *q == '\n') {
    const char* blank_end = q;
    if (!take_eol()) return Scan::NeedMore;
    consumed_ = static_cast<std::size_t>(q - begin);
    if (s_.skip_blank_lines) return Scan::Skipped;
    RawField& f = field_at(used++);
    f.quoted = false;
    f.text.assign(trim ? blank_end : lead, blank_end);
    return Scan::Row;
  }
  if (!trim) q = lead;

  for (;;) {
    RawField& f = field_at(used++);
    f.text.clear();
    f.quoted = false;
    if (trim) {
      while (q < end && is_blank(*q) && *q != delim) ++q;
    }
    if (q == end) {
      if (!eof_) return Scan::NeedMore;
      consumed_ = static_cast<std::size_t>(q - begin);
      return Scan::Row;
    }
    if (*q == quote) {
      f.quoted = true;
      const std::size_t open_line = lines_;
      ++q;
      for (;;) {
        const char* close = static_cast<const char*>(std::memchr(q, quote, static_cast<std::size_t>(end - q)));
        if (close == nullptr) {
          if (!eof_) return Scan::NeedMore;
          quote_line_ = line_ + open_line;
          return Scan::Error;
        }
        lines_ += count_lines(q, close);
        f.text.append(q, close);
        q = close + 1;
        if (q == end && !eof_) return Scan::NeedMore;
        if (q < end && *q == quote) {
          f.text.push_back(quote);
          ++q;
          continue;
        }
        break;
      }
      const std::size_t quoted_len = f.text.size();
      const char* stop = find_stop(q, end);
      if (stop == end && !eof_) return Scan::NeedMore;
      f.text.append(q, stop);
      if (trim) {
        while (f.text.size() > quoted_len && is_blank(f.text.back())) f.text.pop_back();
      }
      q = stop;
    } else {
      const char* stop = find_stop(q, end);
      if (stop == end && !eof_) return Scan::NeedMore;
      const char* last = stop;
      if (trim) {
        while (last > q && is_blank(last[-1])) --last;
      }
      f.text.assign(q, last);
      q = stop;
    }
    if (q == end) {
      consumed_ = static_cast<std::size_t>(q - begin);
      return Scan::Row;
    }
    if (*q == delim) {
      ++q;
      continue;
    }
    if (!take_eol()) return Scan::NeedMore;
    consumed_ = static_cast<std::size_t>(q - begin);
    return Scan::Row;
  }
}

bool FastSource::next(RawRow& row) {
  if (done_) {
    row.clear();
    return false;
  }
  if (!started_) {
    started_ = true;
    while (end_ < 3 && !eof_) refill();
    if (end_ >= 3 && std::memcmp(buf_.data(), "\xEF\xBB\xBF", 3) == 0) pos_ = 3;
  }
  for (;;) {
    std::size_t used = 0;
    const std::size_t record_line = line_;
    const Scan r = scan(row, used);
    switch (r) {
      case Scan::NeedMore:
        refill();
        continue;
      case Scan::Error:
        error_ = "unterminated quoted field starting at line " + std::to_string(quote_line_);
        done_ = true;
        row.clear();
        return false;
      case Scan::End:
        done_ = true;
        row.clear();
        return false;
      case Scan::Skipped:
        pos_ += consumed_;
        line_ += lines_;
        continue;
      case Scan::Row: {
        // Fields are built from the record bytes, so an all-ASCII record
        // needs no per-field check.
        const std::string_view record(buf_.data() + pos_, consumed_);
        pos_ += consumed_;
        line_ += lines_;
        row.resize(used);
        if (!detail::is_ascii(record) && !detail::check_row_encoding(row, record_line, error_)) {
          done_ = true;
          row.clear();
          return false;
        }
        return true;
      }
    }
  }
}

}  // namespace

std::unique_ptr<RowSource> FastBackend::open(std::istream& in, const CsvSettings& settings, Reason& error) {
  peak_buffer_ = 0;
  return std::make_unique<FastSource>(in, settings, error, block_size_, peak_buffer_);
}

}  // namespace safecsv
