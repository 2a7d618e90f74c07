// Copyright 2026 The Polarized Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLARIZED_TOOLS_CLI_H
#define POLARIZED_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace polarized::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kInvalidArguments = 3,
};

/// Runs one command. `args` excludes the program name. The JSON report goes
/// to `out`, human-readable diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polarized::cli

#endif  // POLARIZED_TOOLS_CLI_H
