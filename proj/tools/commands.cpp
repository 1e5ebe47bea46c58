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

#include "commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <sstream>

#include "safecsv/bench.hpp"
#include "safecsv/report.hpp"
#include "safecsv/schema.hpp"
#include "safecsv/session.hpp"

namespace safecsv::cli {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return out;
}

std::optional<SchemaDocument> load_schema(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read schema file: " << path << '\n';
    return std::nullopt;
  }
  std::ostringstream text;
  text << in.rdbuf();
  auto parsed = parse_schema(text.str());
  if (!parsed) {
    err << "error: " << path << ": " << parsed.diagnostic.to_string() << '\n';
    return std::nullopt;
  }
  return std::move(*parsed.document);
}

std::optional<BackendKind> pick_backend(const std::string& name, std::ostream& err) {
  auto k = backend_from_name(name);
  if (!k) err << "error: unknown parser '" << name << "' (expected native or fast)\n";
  return k;
}

int report(const Session& s, const std::string& file, std::ostream& out, std::ostream& err) {
  if (s.ferr()) {
    err << "error: " << *s.ferr() << '\n';
    return kExitError;
  }
  out << render_report(file, s.structural_errors(), s.pos());
  return s.pos().empty() ? kExitOk : kExitFailures;
}

}  // namespace

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  const auto schema = load_schema(args.schema, err);
  if (!schema) return kExitError;
  const auto backend = pick_backend(args.parser, err);
  if (!backend) return kExitError;
  Session s;
  s.load_csv(args.csv, *backend, schema->settings, schema->build_headers(), schema->build_suite(), args.strict,
             !args.no_header);
  return report(s, args.csv, out, err);
}

int cmd_print(const PrintArgs& args, std::ostream& out, std::ostream& err) {
  const auto schema = load_schema(args.schema, err);
  if (!schema) return kExitError;
  const auto backend = pick_backend(args.parser, err);
  if (!backend) return kExitError;
  Session s;
  s.load_csv(args.csv, *backend, schema->settings, schema->build_headers(), schema->build_suite(), false,
             !args.no_header);
  if (s.ferr()) {
    err << "error: " << *s.ferr() << '\n';
    return kExitError;
  }
  if (!s.print_csv(args.out)) {
    err << "error: " << s.ferr().value_or("print failed") << '\n';
    return kExitError;
  }
  if (!s.pos().empty()) {
    out << render_report(args.csv, s.structural_errors(), s.pos());
    return kExitFailures;
  }
  out << "wrote " << s.data().matrix.size() << " rows to \"" << args.out << "\"\n";
  return kExitOk;
}

int cmd_infer(const InferArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<CsvType> types;
  for (const auto& name : split_list(args.types)) {
    auto t = type_from_name(name);
    if (!t) {
      err << "error: unknown type '" << name << "' (expected Str, String, Int, Integer, Float, Bool or Boolean)\n";
      return kExitError;
    }
    types.push_back(*t);
  }
  if (types.empty()) {
    err << "error: --types must list at least one type\n";
    return kExitError;
  }
  const auto backend = pick_backend(args.parser, err);
  if (!backend) return kExitError;
  Session s;
  s.load_simple_headers_csv(args.csv, *backend, types, args.strict);
  if (!s.ferr()) {
    out << "headers:";
    const auto& headers = s.data().headers;
    for (std::size_t c = 0; c < headers.size(); ++c) {
      out << (c ? ", " : " ") << headers[c].name() << " (" << type_name(headers[c].type()) << ")";
    }
    out << '\n';
  }
  return report(s, args.csv, out, err);
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  BenchOptions opts;
  opts.row_counts.clear();
  for (const auto& item : split_list(args.rows)) {
    auto n = parse_cell(CsvType::Integer, item);
    if (!n || n.value->as_integer() < 1) {
      err << "error: invalid row count '" << item << "'\n";
      return kExitError;
    }
    opts.row_counts.push_back(static_cast<std::size_t>(n.value->as_integer()));
  }
  opts.backends.clear();
  for (const auto& name : split_list(args.parsers)) {
    const auto k = pick_backend(name, err);
    if (!k) return kExitError;
    opts.backends.push_back(*k);
  }
  if (args.reps < 3) {
    err << "error: --reps must be at least 3\n";
    return kExitError;
  }
  opts.repetitions = args.reps;
  opts.seed = args.seed;
  opts.work_dir = args.dir;

  const BenchReport rep = run_bench(opts);
  out << rep.to_table();
  if (!args.out.empty()) {
    std::ofstream f(args.out, std::ios::binary | std::ios::trunc);
    f << rep.to_csv();
    if (!f) {
      err << "error: cannot write report: " << args.out << '\n';
      return kExitError;
    }
  }
  for (const auto& r : rep.rows) {
    if (r.failure) return kExitFailures;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schema-driven CSV validation"};
  app.require_subcommand(1);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check a CSV file against a schema");
  v->add_option("csv", validate.csv, "CSV file")->required();
  v->add_option("--schema", validate.schema, "Schema file")->required();
  v->add_flag("--strict", validate.strict, "Discard the data on any failure");
  v->add_option("--parser", validate.parser, "native or fast");
  v->add_flag("--no-header", validate.no_header, "The file has no header line");

  PrintArgs print;
  auto* p = app.add_subcommand("print", "Load a CSV file and write it back out");
  p->add_option("csv", print.csv, "CSV file")->required();
  p->add_option("--schema", print.schema, "Schema file")->required();
  p->add_option("--out", print.out, "Output path")->required();
  p->add_option("--parser", print.parser, "native or fast");
  p->add_flag("--no-header", print.no_header, "The file has no header line");

  InferArgs infer;
  auto* i = app.add_subcommand("infer", "Load a headered CSV file from a list of column types");
  i->add_option("csv", infer.csv, "CSV file")->required();
  i->add_option("--types", infer.types, "Comma-separated types, e.g. Str,Int,Bool")->required();
  i->add_flag("--strict", infer.strict, "Discard the data on any failure");
  i->add_option("--parser", infer.parser, "native or fast");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time parse and load over generated files");
  b->add_option("--rows", bench.rows, "Comma-separated row counts");
  b->add_option("--parsers", bench.parsers, "Comma-separated parsers");
  b->add_option("--out", bench.out, "Write the report as CSV");
  b->add_option("--reps", bench.reps, "Repetitions per measurement (>= 3)");
  b->add_option("--seed", bench.seed, "Generator seed");
  b->add_option("--dir", bench.dir, "Directory for generated inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (v->parsed()) return cmd_validate(validate, out, err);
    if (p->parsed()) return cmd_print(print, out, err);
    if (i->parsed()) return cmd_infer(infer, out, err);
    if (b->parsed()) return cmd_bench(bench, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace safecsv::cli
