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

#include "safecsv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "safecsv/invariants.hpp"
#include "safecsv/io.hpp"

namespace safecsv {

namespace fs = std::filesystem;

namespace {

class NaiveLineSource final : public RowSource {
 public:
  NaiveLineSource(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

  bool next(RawRow& row) override {
    row.clear();
    while (std::getline(in_, line_)) {
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      if (line_.empty()) continue;
      std::size_t start = 0;
      for (;;) {
        const std::size_t cut = line_.find(delimiter_, start);
        if (cut == std::string::npos) {
          row.push_back(RawField{line_.substr(start), false});
          break;
        }
        row.push_back(RawField{line_.substr(start, cut - start), false});
        start = cut + 1;
      }
      return true;
    }
    return false;
  }

 private:
  std::istream& in_;
  char delimiter_;
  std::string line_;
};

// mt19937_64 output is fixed by the standard; the distributions are not,
// so values are derived from raw draws.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 rng_;
};

double round_to(double x, unsigned digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(x * scale) / scale;
}

double pick_real(Draw& d, const std::optional<RangeSpec>& range) {
  const double lo = range ? range->lo : 0.0;
  const double hi = range ? range->hi : 1000.0;
  double x = round_to(lo + d.unit() * (hi - lo), 1);
  return std::clamp(x, lo, hi);
}

bool in_range(const HeaderSpec& h, double x) { return !h.cell || (x >= h.cell->lo && x <= h.cell->hi); }

// Fills weight, height and bmi so that they satisfy the bmi row check and
// every declared range. Returns false if no such triple was found.
bool fill_bmi(Draw& d, const SchemaDocument& schema, const BmiSpec& bmi, Row& row) {
  const auto& wh = schema.headers[bmi.weight_col - 1];
  const auto& hh = schema.headers[bmi.height_col - 1];
  const auto& bh = schema.headers[bmi.bmi_col - 1];
  if (wh.type != CsvType::Float || hh.type != CsvType::Float || bh.type != CsvType::Float) return false;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double height = pick_real(d, hh.cell);
    const double metres2 = (height / 100.0) * (height / 100.0);
    if (metres2 <= 0) continue;
    double lo = bh.cell ? bh.cell->lo : 18.0;
    double hi = bh.cell ? bh.cell->hi : 35.0;
    if (wh.cell) {
      lo = std::max(lo, wh.cell->lo / metres2);
      hi = std::min(hi, wh.cell->hi / metres2);
    }
    if (lo > hi) continue;
    const double weight = round_to((lo + d.unit() * (hi - lo)) * metres2, 1);
    const double value = round_to(weight / metres2, bmi.precision);
    if (!in_range(wh, weight) || !in_range(bh, value)) continue;
    if (!approx_eq(value, weight / metres2, bmi.precision)) continue;
    row[bmi.weight_col - 1] = CsvValue::real(weight);
    row[bmi.height_col - 1] = CsvValue::real(height);
    row[bmi.bmi_col - 1] = CsvValue::real(value);
    return true;
  }
  return false;
}

std::string format_number(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

}  // namespace

std::unique_ptr<RowSource> NaiveLineBackend::open(std::istream& in, const CsvSettings& settings, Reason&) {
  return std::make_unique<NaiveLineSource>(in, settings.delimiter);
}

std::string gen_csv_text(std::size_t rows, const SchemaDocument& schema, std::uint64_t seed) {
  Draw d(seed);
  Data data;
  data.settings = schema.settings;
  data.headers = schema.build_headers();
  data.matrix.reserve(rows);
  static constexpr char kLetters[] = "abcdefghijklmnopqrstuvwxyz";
  for (std::size_t i = 0; i < rows; ++i) {
    Row row;
    row.reserve(schema.headers.size());
    for (const auto& h : schema.headers) {
      switch (h.type) {
        case CsvType::String: {
          std::string s = "P" + std::to_string(i + 1) + "_";
          for (int k = 0; k < 4; ++k) s.push_back(kLetters[d.below(26)]);
          row.push_back(CsvValue::text(std::move(s)));
          break;
        }
        case CsvType::Integer: {
          if (h.col) {
            row.push_back(CsvValue::integer(static_cast<std::int64_t>(i) + 1));
            break;
          }
          const auto lo = h.cell ? static_cast<std::int64_t>(std::ceil(h.cell->lo)) : 0;
          const auto hi = h.cell ? static_cast<std::int64_t>(std::floor(h.cell->hi)) : 999;
          row.push_back(CsvValue::integer(lo <= hi ? d.between(lo, hi) : lo));
          break;
        }
        case CsvType::Float:
          row.push_back(CsvValue::real(pick_real(d, h.cell)));
          break;
        case CsvType::Boolean:
          row.push_back(CsvValue::boolean(d.below(2) == 1));
          break;
      }
    }
    if (schema.row) fill_bmi(d, schema, *schema.row, row);
    data.matrix.push_back(std::move(row));
  }
  std::ostringstream out;
  write_csv(out, data);
  return out.str();
}

Reason gen_csv(std::size_t rows, const SchemaDocument& schema, std::uint64_t seed, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return "cannot open for writing: " + path.string();
  out << gen_csv_text(rows, schema, seed);
  out.flush();
  if (!out) return "write failed: " + path.string();
  return std::nullopt;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

std::vector<LoadTiming> time_loads(const fs::path& path, const std::vector<ParserBackend*>& engines,
                                   const SchemaDocument& schema, unsigned reps) {
  Headers plain;
  for (const auto& h : schema.headers) plain.emplace_back(h.name, h.type, h.default_value);
  const InvariantSuite none;
  CsvIo io;
  std::vector<LoadTiming> out(engines.size());
  std::vector<std::vector<double>> samples(engines.size());
  // Round 0 is an untimed warm-up. Engines take turns inside each round.
  for (unsigned rep = 0; rep <= reps; ++rep) {
    for (std::size_t e = 0; e < engines.size(); ++e) {
      if (out[e].failure) continue;
      const auto t0 = std::chrono::steady_clock::now();
      ReadOutcome res = io.read(path, *engines[e], schema.settings, plain, true);
      if (!res.success) {
        out[e].failure = io.last_error().value_or("read failed");
        continue;
      }
      const auto failed = csv_invariants_failed(res.data, none);
      const auto t1 = std::chrono::steady_clock::now();
      if (!failed.empty() || !res.errors.empty()) {
        out[e].failure = "generated input did not load cleanly";
        continue;
      }
      if (rep > 0) samples[e].push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }
  for (std::size_t e = 0; e < engines.size(); ++e) {
    if (!out[e].failure) out[e].median_ms = median(std::move(samples[e]));
  }
  return out;
}

double time_load(const fs::path& path, ParserBackend& backend, const SchemaDocument& schema, unsigned reps,
                 Reason& failure) {
  const auto t = time_loads(path, {&backend}, schema, reps);
  failure = t[0].failure;
  return t[0].failure ? 0 : t[0].median_ms;
}

BenchReport run_bench(const BenchOptions& options) {
  if (options.repetitions < 3) throw std::invalid_argument("bench needs at least 3 repetitions");
  for (auto n : options.row_counts) {
    if (n == 0) throw std::invalid_argument("bench row counts must be positive");
  }
  fs::path dir = options.work_dir;
  if (dir.empty()) {
    dir = fs::temp_directory_path() / ("safecsv-bench-" + std::to_string(options.seed));
  }
  fs::create_directories(dir);

  const SchemaDocument schema = example_people_schema();
  std::vector<std::unique_ptr<ParserBackend>> engines;
  for (auto k : options.backends) engines.push_back(make_backend(k));
  if (options.include_baseline) engines.push_back(std::make_unique<NaiveLineBackend>());

  BenchReport report;
  for (auto rows : options.row_counts) {
    const fs::path input = dir / ("people-" + std::to_string(rows) + ".csv");
    const Reason gen_failure = gen_csv(rows, schema, options.seed, input);
    std::vector<ParserBackend*> ptrs;
    for (auto& engine : engines) ptrs.push_back(engine.get());
    std::vector<LoadTiming> timings(engines.size());
    if (!gen_failure) timings = time_loads(input, ptrs, schema, options.repetitions);
    for (std::size_t e = 0; e < engines.size(); ++e) {
      BenchRow r;
      r.backend = std::string(engines[e]->name());
      r.rows = rows;
      r.reps = options.repetitions;
      r.failure = gen_failure ? gen_failure : timings[e].failure;
      if (!r.failure) {
        r.median_ms = timings[e].median_ms;
        r.rows_per_sec = static_cast<double>(rows) / (std::max(r.median_ms, 1e-6) / 1000.0);
      }
      report.rows.push_back(std::move(r));
    }
  }
  return report;
}

const BenchRow* BenchReport::find(std::string_view backend, std::size_t n) const {
  for (const auto& r : rows) {
    if (r.backend == backend && r.rows == n) return &r;
  }
  return nullptr;
}

std::optional<double> BenchReport::fast_vs_baseline(std::size_t n) const {
  const BenchRow* fast = find("fast", n);
  const BenchRow* base = find("naive-baseline", n);
  if (!fast || !base || fast->failure || base->failure || fast->median_ms <= 0) return std::nullopt;
  return base->median_ms / fast->median_ms;
}

std::string BenchReport::to_csv() const {
  std::string out = "backend,rows,reps,median_ms,rows_per_sec\n";
  for (const auto& r : rows) {
    out += r.backend + "," + std::to_string(r.rows) + "," + std::to_string(r.reps) + ",";
    if (!r.failure) out += format_number(r.median_ms, 3) + "," + format_number(r.rows_per_sec, 0);
    else out += ",";
    out += "\n";
  }
  return out;
}

std::string BenchReport::to_table() const {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %8s %5s %12s %14s\n", "backend", "rows", "reps", "median_ms", "rows/sec");
  out << line;
  std::size_t largest = 0;
  for (const auto& r : rows) {
    largest = std::max(largest, r.rows);
    if (r.failure) {
      std::snprintf(line, sizeof line, "%-16s %8zu %5u  failed: ", r.backend.c_str(), r.rows, r.reps);
      out << line << *r.failure << '\n';
      continue;
    }
    std::snprintf(line, sizeof line, "%-16s %8zu %5u %12.3f %14.0f\n", r.backend.c_str(), r.rows, r.reps, r.median_ms,
                  r.rows_per_sec);
    out << line;
  }
  if (auto ratio = fast_vs_baseline(largest)) {
    std::snprintf(line, sizeof line, "fast vs naive-baseline at %zu rows: %.2fx (reference ~1.5x)\n",
                  largest, *ratio);
    out << line;
  }
  return out.str();
}

}  // namespace safecsv
