// Copyright 2026 The Sumfold Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUMFOLD_TOOLS_CLI_H_
#define SUMFOLD_TOOLS_CLI_H_

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace sumfold::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;

// Runs `sumfold <args...>` (args excludes the program name) and returns the
// exit code. Normal output goes to `out`, diagnostics to `err`.
// Maps a failure to its exit code and prints a diagnostic to `err`.
// Exceptions outside the contract are rethrown.
int ReportError(std::exception_ptr error, std::ostream& err);

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sumfold::cli

#endif  // SUMFOLD_TOOLS_CLI_H_
