// Copyright 2026 The neuronmine Authors
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

#ifndef NEURONMINE_NUMFMT_HPP_
#define NEURONMINE_NUMFMT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace neuronmine {

// Shortest decimal that parses back to the identical double.
std::string format_double(double value);

// Strict parse of a whole field; throws DataError on trailing garbage.
// Non-finite spellings ("nan", "inf") parse successfully; callers decide.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_whitespace(std::string_view line);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> split_on(std::string_view line, char delim);

std::string_view trim(std::string_view s);

std::string to_lower(std::string_view s);

}  // namespace neuronmine

#endif  // NEURONMINE_NUMFMT_HPP_
