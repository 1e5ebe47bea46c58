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

#include "safecsv/report.hpp"

namespace safecsv {

std::string format_error_line(const CsvError& e) {
  return "    (" + std::to_string(e.row_no) + ", " + std::to_string(e.col_no) + "): \"" + e.reason + "\"";
}

std::string render_report(std::string_view file, const std::set<CsvError>& structural,
                          const std::set<CsvError>& failures) {
  std::string out;
  const std::string quoted_file = "\"" + std::string(file) + "\"";
  if (!structural.empty()) {
    out += "CSV (IO) error: ignoring " + std::to_string(structural.size()) + " short rows from " + quoted_file + "\n";
    for (const auto& e : structural) out += format_error_line(e) + "\n";
  }
  std::size_t invariant_count = 0;
  for (const auto& e : failures) invariant_count += structural.count(e) ? 0 : 1;
  if (invariant_count > 0) {
    out += "CSV invariants failed for " + quoted_file + ":\n";
    out += "CSV invariant failure at " + std::to_string(invariant_count) + " cells:\n";
    for (const auto& e : failures) {
      if (!structural.count(e)) out += format_error_line(e) + "\n";
    }
  }
  if (structural.empty() && invariant_count == 0) out += "OK: 0 invariant failures\n";
  return out;
}

}  // namespace safecsv
