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

#ifndef SUMFOLD_ERRORS_H_
#define SUMFOLD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sumfold {

// Bad input: malformed files, violated preconditions, unsupported flags.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A step whose outcome is guaranteed mathematically did not hold. This is
// either an implementation bug or a counterexample; it is never silenced.
class InternalInconsistency : public std::logic_error {
 public:
  InternalInconsistency(std::string step, const std::string& detail)
      : std::logic_error(step + ": " + detail), step_(std::move(step)) {}

  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

}  // namespace sumfold

#endif  // SUMFOLD_ERRORS_H_
