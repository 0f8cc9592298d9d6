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

#include "sumfold/set_io.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "sumfold/errors.h"

namespace sumfold {

namespace {

Rational ElementFromJson(const nlohmann::json& v, std::size_t index) {
  auto where = [&] { return "set entry " + std::to_string(index); };
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) {
      return Rational(mpz_class(v.get<std::uint64_t>()));
    }
    return Rational(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    try {
      return Rational::Parse(v.get<std::string>());
    } catch (const std::exception& e) {
      throw UsageError(where() + ": " + e.what());
    }
  }
  if (v.is_number_float()) {
    throw UsageError(where() + ": floating-point values are not exact; write "
                     "the value as a \"p/q\" string");
  }
  throw UsageError(where() + ": expected an integer or a \"p/q\" string");
}

}  // namespace

FiniteSet ParseSetJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("set file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw UsageError("set file must hold a JSON array");
  std::vector<Rational> elements;
  elements.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    elements.push_back(ElementFromJson(doc[i], i));
  }
  return FiniteSet::FromElements(std::move(elements));
}

FiniteSet ReadSetFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open set file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseSetJson(buf.str());
}

std::string SetToJson(const FiniteSet& set) {
  nlohmann::json doc = nlohmann::json::array();
  for (const Rational& r : set) {
    if (r.IsInteger() && r.IsSmall()) {
      doc.push_back(r.Numerator().get_si());
    } else {
      doc.push_back(r.ToString());
    }
  }
  return doc.dump() + "\n";
}

void WriteSetFile(const std::filesystem::path& path, const FiniteSet& set) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write set file " + path.string());
  out << SetToJson(set);
  if (!out) throw UsageError("failed writing set file " + path.string());
}

}  // namespace sumfold
