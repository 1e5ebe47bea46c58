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

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace safecsv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailures = 1;
inline constexpr int kExitError = 2;

struct ValidateArgs {
  std::string csv;
  std::string schema;
  bool strict = false;
  std::string parser = "native";
  bool no_header = false;
};

struct PrintArgs {
  std::string csv;
  std::string schema;
  std::string out;
  std::string parser = "native";
  bool no_header = false;
};

struct InferArgs {
  std::string csv;
  std::string types;
  bool strict = false;
  std::string parser = "native";
};

struct BenchArgs {
  std::string rows = "100,1000,35000";
  std::string parsers = "native,fast";
  std::string out;
  unsigned reps = 5;
  std::uint64_t seed = 7;
  std::string dir;
};

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err);
int cmd_print(const PrintArgs& args, std::ostream& out, std::ostream& err);
int cmd_infer(const InferArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

/// Runs the tool on `argv` and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace safecsv::cli
