// Copyright 2026 The loomxai Authors
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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers shared by the filter engine and the toy tokenizer.
namespace loomxai::text {

bool is_valid_utf8(std::string_view s) noexcept;

/// Number of Unicode scalar values. Input must be valid UTF-8.
std::size_t length(std::string_view s) noexcept;

std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);

/// Unicode simple case folding, code point by code point.
std::u32string casefold(std::u32string_view s);
std::string casefold(std::string_view s);

/// Case-insensitive containment under simple case folding.
bool contains_folded(std::string_view haystack, std::string_view needle);

/// Lowercase (simple casefold) tokens: maximal runs of letters and digits.
std::vector<std::string> tokenize(std::string_view s);

}  // namespace loomxai::text
