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

#include "safecsv/io.hpp"

#include <algorithm>
#include <fstream>

#include "safecsv/invariants.hpp"

namespace safecsv {

namespace fs = std::filesystem;

namespace {

std::string status_message(FileStatus s, const fs::path& path) {
  switch (s) {
    case FileStatus::Missing:
      return "file not found: " + path.string();
    case FileStatus::IsDirectory:
      return "path is a directory: " + path.string();
    case FileStatus::NotReadable:
      return "file not readable: " + path.string();
    case FileStatus::Valid:
      break;
  }
  return {};
}

bool is_blank(char c) { return c == ' ' || c == '\t'; }

}  // namespace

std::string_view file_status_name(FileStatus s) noexcept {
  switch (s) {
    case FileStatus::Valid:
      return "Valid";
    case FileStatus::Missing:
      return "Missing";
    case FileStatus::IsDirectory:
      return "IsDirectory";
    case FileStatus::NotReadable:
      return "NotReadable";
  }
  return "?";
}

FileStatus file_status(const fs::path& path) {
  std::error_code ec;
  const auto st = fs::status(path, ec);
  if (ec || !fs::exists(st)) return FileStatus::Missing;
  if (fs::is_directory(st)) return FileStatus::IsDirectory;
  if (!fs::is_regular_file(st)) return FileStatus::NotReadable;
  std::ifstream probe(path, std::ios::binary);
  return probe ? FileStatus::Valid : FileStatus::NotReadable;
}

ReadOutcome CsvIo::read(const fs::path& path, ParserBackend& backend, const CsvSettings& settings,
                        const Headers& headers, bool has_header_line) {
  error_.reset();
  if (const auto st = file_status(path); st != FileStatus::Valid) {
    ReadOutcome out;
    out.data.settings = settings;
    out.data.headers = headers;
    error_ = status_message(st, path);
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ReadOutcome out;
    out.data.settings = settings;
    out.data.headers = headers;
    error_ = status_message(FileStatus::NotReadable, path);
    return out;
  }
  return read(in, backend, settings, headers, has_header_line);
}

ReadOutcome CsvIo::read(std::istream& in, ParserBackend& backend, const CsvSettings& settings,
                        const Headers& headers, bool has_header_line) {
  error_.reset();
  ReadOutcome out;
  out.data.settings = settings;
  out.data.headers = headers;
  auto fail = [&](std::string why) {
    error_ = std::move(why);
    out.success = false;
    out.errors.clear();
    out.data.matrix.clear();
    out.data.row_numbers.clear();
    out.raw_rows = 0;
    return out;
  };
  if (headers.empty()) return fail("no headers declared");

  auto cursor = backend.parse(in, settings);
  if (backend.last_error()) return fail(*backend.last_error());

  RawRow raw;
  const std::size_t width = headers.size();
  if (has_header_line) {
    if (!cursor.next(raw)) return fail(backend.last_error() ? *backend.last_error() : "missing header row");
    const bool needs_names =
        std::any_of(headers.begin(), headers.end(), [](const Header& h) { return h.name().empty(); });
    if (needs_names) {
      if (raw.size() != width) {
        return fail("header row has " + std::to_string(raw.size()) + " columns but " + std::to_string(width) +
                    " types were declared");
      }
      for (std::size_t c = 0; c < width; ++c) {
        if (out.data.headers[c].name().empty()) out.data.headers[c].set_name(raw[c].text);
      }
    }
  }

  std::size_t row_no = 0;
  const bool trim = settings.trim_unquoted;
  while (cursor.next(raw)) {
    ++row_no;
    if (auto why = implicit_row_width_check(width, raw.size(), row_no)) {
      out.errors.insert({row_no, width, std::move(*why)});
      continue;
    }
    Row row;
    row.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
      const Header& h = out.data.headers[c];
      const auto text = apply_default(h, raw[c]);
      if (!text) {
        row.push_back(h.default_value());
        continue;
      }
      auto parsed = parse_cell(h.type(), *text, trim && !raw[c].quoted);
      row.push_back(parsed ? std::move(*parsed.value) : CsvValue::text(std::string(*text)));
    }
    out.data.matrix.push_back(std::move(row));
    out.data.row_numbers.push_back(row_no);
  }
  if (backend.last_error()) return fail(*backend.last_error());
  out.raw_rows = row_no;
  out.success = true;
  return out;
}

std::string quote_field(std::string_view text, const CsvSettings& s) {
  bool needs = text.empty() || is_blank(text.front()) || is_blank(text.back()) ||
               (s.line_comment && text.front() == *s.line_comment);
  for (char c : text) {
    if (c == s.delimiter || c == s.quote || c == '\r' || c == '\n') {
      needs = true;
      break;
    }
  }
  if (!needs) return std::string(text);
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back(s.quote);
  for (char c : text) {
    if (c == s.quote) out.push_back(s.quote);
    out.push_back(c);
  }
  out.push_back(s.quote);
  return out;
}

void write_csv(std::ostream& out, const Data& d) {
  const CsvSettings& s = d.settings;
  for (std::size_t c = 0; c < d.headers.size(); ++c) {
    if (c) out.put(s.delimiter);
    out << quote_field(d.headers[c].name(), s);
  }
  out.put('\n');
  for (const auto& row : d.matrix) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.put(s.delimiter);
      out << quote_field(render_value(row[c]), s);
    }
    out.put('\n');
  }
}

bool CsvIo::write(const fs::path& path, const Data& d) {
  error_.reset();
  if (auto bad = d.settings.check()) {
    error_ = "invalid CSV settings: " + *bad;
    return false;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    error_ = "cannot open for writing: " + path.string();
    return false;
  }
  write_csv(out, d);
  out.flush();
  if (!out) {
    error_ = "write failed: " + path.string();
    return false;
  }
  return true;
}

}  // namespace safecsv
