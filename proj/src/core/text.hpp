// Copyright 2026 The lcpseg Authors
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

#ifndef LCPSEG_CORE_TEXT_HPP_
#define LCPSEG_CORE_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace lcpseg {

// Splits UTF-8 text into one string per Unicode scalar value. Rejects
// malformed sequences (truncation, overlong forms, surrogates, values past
// U+10FFFF) with ParseError.
std::vector<std::string> split_scalars(std::string_view text);

// Number of Unicode scalar values in text; throws ParseError when malformed.
size_t scalar_count(std::string_view text);

bool is_valid_utf8(std::string_view text);

// Escaping used by model files and label scripts: backslash, tab, LF and CR
// become \\ \t \n \r so token texts stay line- and field-safe.
std::string escape_token(std::string_view token);
std::string unescape_token(std::string_view escaped);

}  // namespace lcpseg

#endif  // LCPSEG_CORE_TEXT_HPP_
