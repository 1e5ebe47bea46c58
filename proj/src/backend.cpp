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

#include "safecsv/backend.hpp"

#include <cstdint>
#include <cstring>
#include <string>

namespace safecsv {

std::string_view backend_name(BackendKind k) noexcept {
  return k == BackendKind::Native ? "native" : "fast";
}

std::optional<BackendKind> backend_from_name(std::string_view name) noexcept {
  if (name == "native") return BackendKind::Native;
  if (name == "fast") return BackendKind::Fast;
  return std::nullopt;
}

RowCursor ParserBackend::parse(std::istream& in, const CsvSettings& settings) {
  error_.reset();
  settings_ = settings;
  if (auto bad = settings.check()) {
    error_ = "invalid CSV settings: " + *bad;
    return RowCursor(nullptr);
  }
  return RowCursor(open(in, settings_, error_));
}

std::unique_ptr<ParserBackend> make_backend(BackendKind k) {
  if (k == BackendKind::Native) return std::make_unique<NativeBackend>();
  return std::make_unique<FastBackend>();
}

namespace detail {

bool is_ascii(std::string_view s) noexcept {
  const char* p = s.data();
  const char* end = p + s.size();
  std::uint64_t acc = 0;
  for (; end - p >= 8; p += 8) {
    std::uint64_t w;
    std::memcpy(&w, p, 8);
    acc |= w;
  }
  for (; p < end; ++p) acc |= static_cast<unsigned char>(*p);
  return (acc & 0x8080808080808080ULL) == 0;
}

bool valid_utf8(std::string_view s) noexcept {
  if (is_ascii(s)) return true;
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  const auto* end = p + s.size();
  while (p < end) {
    const unsigned char c = *p;
    if (c < 0x80) {
      ++p;
      continue;
    }
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (static_cast<std::size_t>(end - p) <= extra) return false;
    for (std::size_t i = 1; i <= extra; ++i) {
      if ((p[i] & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (p[i] & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    p += extra + 1;
  }
  return true;
}

bool check_row_encoding(const RawRow& row, std::size_t record_line, Reason& error) {
  for (const auto& f : row) {
    if (!valid_utf8(f.text)) {
      error = "invalid UTF-8 in record starting at line " + std::to_string(record_line);
      return false;
    }
  }
  return true;
}

}  // namespace detail

namespace {

bool is_blank(int c) { return c == ' ' || c == '\t'; }

class NativeSource final : public RowSource {
 public:
  NativeSource(std::istream& in, const CsvSettings& s, Reason& error)
      : buf_(in.rdbuf()), s_(s), error_(error) {}

  bool next(RawRow& row) override;

 private:
  static constexpr int kEof = std::char_traits<char>::eof();

  int peek() {
    if (!pending_.empty()) return static_cast<unsigned char>(pending_.back());
    return buf_ ? buf_->sgetc() : kEof;
  }
  int get() {
    if (!pending_.empty()) {
      const int c = static_cast<unsigned char>(pending_.back());
      pending_.pop_back();
      return c;
    }
    return buf_ ? buf_->sbumpc() : kEof;
  }

  void skip_bom();
  // Consumes a terminator whose first byte `c` was already read.
  void finish_eol(int c) {
    if (c == '\r' && peek() == '\n') get();
    ++line_;
  }
  void end_field(RawRow& row, std::string& field, bool quoted, std::size_t quoted_len);

  std::streambuf* buf_;
  CsvSettings s_;
  Reason& error_;
  std::string pending_;  // pushback, consumed from the back
  std::size_t line_ = 1;
  bool started_ = false;
  bool done_ = false;
};

void NativeSource::skip_bom() {
  static constexpr unsigned char kBom[] = {0xEF, 0xBB, 0xBF};
  std::string seen;
  for (unsigned char b : kBom) {
    if (peek() != b) break;
    seen.push_back(static_cast<char>(get()));
  }
  if (seen.size() != 3) pending_.assign(seen.rbegin(), seen.rend());
}

void NativeSource::end_field(RawRow& row, std::string& field, bool quoted, std::size_t quoted_len) {
  if (s_.trim_unquoted) {
    const std::size_t keep = quoted ? quoted_len : 0;
    while (field.size() > keep && is_blank(static_cast<unsigned char>(field.back()))) field.pop_back();
  }
  row.push_back(RawField{std::move(field), quoted});
  field.clear();
}

bool NativeSource::next(RawRow& row) {
  row.clear();
  if (done_) return false;
  if (!started_) {
    skip_bom();
    started_ = true;
  }
  const int delim = static_cast<unsigned char>(s_.delimiter);
  const int quote = static_cast<unsigned char>(s_.quote);
  const int comment = s_.line_comment ? static_cast<unsigned char>(*s_.line_comment) : -2;

  for (;;) {
    const std::size_t record_line = line_;
    std::string lead;
    while (is_blank(peek()) && peek() != delim) lead.push_back(static_cast<char>(get()));
    int c = peek();
    if (c == kEof) {
      done_ = true;
      if (lead.empty() || s_.skip_blank_lines) return false;
      row.push_back(RawField{s_.trim_unquoted ? std::string() : lead, false});
      return detail::check_row_encoding(row, record_line, error_);
    }
    if (c == comment) {
      do {
        c = get();
      } while (c != kEof && c != '\r' && c != '\n');
      if (c == kEof) {
        done_ = true;
        return false;
      }
      finish_eol(c);
      continue;
    }
    if (c == '\r' || c == '\n') {
      finish_eol(get());
      if (s_.skip_blank_lines) continue;
      row.push_back(RawField{s_.trim_unquoted ? std::string() : lead, false});
      if (!detail::check_row_encoding(row, record_line, error_)) {
        done_ = true;
        return false;
      }
      return true;
    }

    enum class St { FieldStart, Unquoted, Quoted, QuoteSeen, Tail };
    St st = St::FieldStart;
    std::string field;
    bool quoted = false;
    std::size_t quoted_len = 0;
    std::size_t quote_line = line_;
    if (!s_.trim_unquoted && !lead.empty()) {
      field = std::move(lead);
      st = St::Unquoted;
    }

    for (;;) {
      c = get();
      switch (st) {
        case St::FieldStart:
          if (c == kEof) {
            end_field(row, field, false, 0);
            done_ = true;
            return detail::check_row_encoding(row, record_line, error_);
          }
          if (c == quote) {
            quoted = true;
            quote_line = line_;
            st = St::Quoted;
          } else if (c == delim) {
            end_field(row, field, false, 0);
          } else if (c == '\r' || c == '\n') {
            end_field(row, field, false, 0);
            finish_eol(c);
            goto record_done;
          } else if (s_.trim_unquoted && is_blank(c)) {
            // leading blank
          } else {
            field.push_back(static_cast<char>(c));
            st = St::Unquoted;
          }
          break;
        case St::Unquoted:
        case St::Tail:
          if (c == kEof) {
            end_field(row, field, quoted, quoted_len);
            done_ = true;
            return detail::check_row_encoding(row, record_line, error_);
          }
          if (c == delim) {
            end_field(row, field, quoted, quoted_len);
            quoted = false;
            st = St::FieldStart;
          } else if (c == '\r' || c == '\n') {
            end_field(row, field, quoted, quoted_len);
            finish_eol(c);
            goto record_done;
          } else {
            field.push_back(static_cast<char>(c));
          }
          break;
        case St::Quoted:
          if (c == kEof) {
            error_ = "unterminated quoted field starting at line " + std::to_string(quote_line);
            done_ = true;
            row.clear();
            return false;
          }
          if (c == quote) {
            st = St::QuoteSeen;
          } else {
            field.push_back(static_cast<char>(c));
            if (c == '\r') {
              if (peek() == '\n') field.push_back(static_cast<char>(get()));
              ++line_;
            } else if (c == '\n') {
              ++line_;
            }
          }
          break;
        case St::QuoteSeen:
          if (c == quote) {
            field.push_back(static_cast<char>(c));
            st = St::Quoted;
          } else if (c == kEof) {
            end_field(row, field, true, field.size());
            done_ = true;
            return detail::check_row_encoding(row, record_line, error_);
          } else if (c == delim) {
            end_field(row, field, true, field.size());
            quoted = false;
            st = St::FieldStart;
          } else if (c == '\r' || c == '\n') {
            end_field(row, field, true, field.size());
            finish_eol(c);
            goto record_done;
          } else {
            quoted_len = field.size();
            field.push_back(static_cast<char>(c));
            st = St::Tail;
          }
          break;
      }
    }
  record_done:
    if (!detail::check_row_encoding(row, record_line, error_)) {
      done_ = true;
      return false;
    }
    return true;
  }
}

}  // namespace

std::unique_ptr<RowSource> NativeBackend::open(std::istream& in, const CsvSettings& settings, Reason& error) {
  return std::make_unique<NativeSource>(in, settings, error);
}

}  // namespace safecsv
