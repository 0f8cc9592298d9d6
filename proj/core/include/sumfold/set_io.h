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

#ifndef SUMFOLD_SET_IO_H_
#define SUMFOLD_SET_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sumfold/rational.h"
#include "sumfold/setops.h"

namespace sumfold {

// Set files are JSON arrays whose entries are integers or rational strings,
// e.g. [1, "3/2", 7]. Reading sorts and deduplicates; empty arrays,
// non-integral JSON numbers and nonpositive entries are rejected with
// UsageError.
FiniteSet ParseSetJson(std::string_view text);
FiniteSet ReadSetFile(const std::filesystem::path& path);

// Canonical form: sorted, integers that fit in 64 bits as JSON numbers,
// everything else as "p/q" strings. One line, trailing newline.
std::string SetToJson(const FiniteSet& set);
void WriteSetFile(const std::filesystem::path& path, const FiniteSet& set);

// JSON value for a rational inside documents: always a string.
inline nlohmann::ordered_json RationalJson(const Rational& r) {
  return r.ToString();
}

}  // namespace sumfold

#endif  // SUMFOLD_SET_IO_H_
