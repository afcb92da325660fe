// Copyright 2026 The axpue Authors.
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

#include <iosfwd>
#include <string>
#include <vector>

namespace axpue::cli {

/// Process exit codes. Stable; scripts depend on them.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kValidationError = 2,  // bad arguments, schema, unknown device/scenario
  kCoverageError = 3,    // missing or gappy telemetry
};

/// Runs the axpue command line (args excludes the program name). Data goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace axpue::cli
