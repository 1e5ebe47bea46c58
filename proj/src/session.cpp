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

#include "safecsv/session.hpp"

namespace safecsv {

namespace fs = std::filesystem;

namespace {

fs::path normalized(const fs::path& p) {
  std::error_code ec;
  auto out = fs::weakly_canonical(fs::absolute(p), ec);
  return ec ? fs::absolute(p).lexically_normal() : out;
}

}  // namespace

void Session::reset(BackendKind backend, bool strict) {
  file_.reset();
  backend_ = backend;
  strict_ = strict;
  ferr_.reset();
  pos_.clear();
  structural_.clear();
  data_ = Data{};
  loaded_ = false;
}

void Session::load_csv(const fs::path& path, BackendKind backend, const CsvSettings& settings,
                       const Headers& headers, const InvariantSuite& suite, bool strict, bool has_header_line) {
  reset(backend, strict);
  data_.settings = settings;
  data_.headers = headers;

  CsvIo io;
  auto parser = make_backend(backend);
  ReadOutcome outcome = io.read(path, *parser, settings, headers, has_header_line);
  if (!outcome.success) {
    ferr_ = io.last_error();
    data_.headers = outcome.data.headers;
    return;
  }
  file_ = path;
  loaded_ = true;
  structural_ = std::move(outcome.errors);
  data_ = std::move(outcome.data);
  pos_ = csv_invariants_failed(data_, suite);
  pos_.insert(structural_.begin(), structural_.end());
  if (strict_ && !pos_.empty()) {
    data_.matrix.clear();
    data_.row_numbers.clear();
  }
}

void Session::load_simple_headers_csv(const fs::path& path, BackendKind backend, const std::vector<CsvType>& types,
                                      bool strict) {
  if (types.empty()) {
    reset(backend, strict);
    ferr_ = "no column types given";
    return;
  }
  Headers headers;
  headers.reserve(types.size());
  for (CsvType t : types) headers.emplace_back("", t, zero_value(t));
  load_csv(path, backend, CsvSettings{}, headers, InvariantSuite{}, strict, true);
}

bool Session::print_csv(const fs::path& out) {
  if (!loaded_ || !file_) {
    ferr_ = "no CSV loaded";
    return false;
  }
  if (normalized(out) == normalized(*file_)) {
    ferr_ = "refusing to overwrite source file";
    return false;
  }
  CsvIo io;
  if (!io.write(out, data_)) {
    ferr_ = io.last_error();
    return false;
  }
  ferr_.reset();
  return true;
}

}  // namespace safecsv
