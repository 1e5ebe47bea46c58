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

#include <set>
#include <string>
#include <string_view>

#include "safecsv/model.hpp"

namespace safecsv {

/// `    (row, col): "reason"`
std::string format_error_line(const CsvError& e);

/// Plain-text validation report. `structural` holds the rejected rows,
/// `failures` every error (structural ones are skipped in the invariant
/// block). Lines are sorted by (row, column, reason).
std::string render_report(std::string_view file, const std::set<CsvError>& structural,
                          const std::set<CsvError>& failures);

}  // namespace safecsv
