// Copyright 2026 The kpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The kpd command line: wfm, derive, trace, weak, strong and check.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kpd/engine.hpp"

namespace kpd::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kSortError = 3,
  kNonTotal = 4,
  kNoModels = 5,
  kSearchBound = 6,
};

enum class Format { Text, Json };

struct RunConfig {
  std::string command;
  std::string inputPath;
  Format format = Format::Text;
  std::size_t maxOpenAtoms = 4;
  std::optional<std::string> worldsHintPath;
  bool worldsFromConstraint = false;
  std::optional<std::string> seedPath;
  std::optional<std::string> modelPath;
  std::string strength = "weak";
  engine::Semantics semantics = engine::Semantics::Op4Flip;
  engine::Op2Mode op2 = engine::Op2Mode::WorldUpper;
  bool trace = false;
};

/// Runs one invocation; `args` excludes the program name. Returns the exit
/// code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace kpd::cli
