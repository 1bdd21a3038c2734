// Copyright 2026 The boundkit Authors.
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

#ifndef BOUNDKIT_UNICODE_H_
#define BOUNDKIT_UNICODE_H_

#include <string>
#include <string_view>

namespace boundkit::unicode {

// Decodes UTF-8. Throws DataError on malformed sequences, surrogates and
// overlong forms.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);
void append_utf8(char32_t cp, std::string* out);

// Number of code points; same validation as decode_utf8.
size_t codepoint_length(std::string_view text);

// Unicode White_Space property.
bool is_whitespace(char32_t cp);

// General category P* (Pc, Pd, Ps, Pe, Pi, Pf, Po), Unicode 13.0.
bool is_punctuation(char32_t cp);

std::u32string reversed(std::u32string_view text);
std::string reversed_utf8(std::string_view text);

// "2581" style upper-case hex, at least four digits.
std::string to_hex(char32_t cp);
// Inverse of to_hex; accepts an optional "U+" prefix. Throws DataError.
char32_t from_hex(std::string_view text);

}  // namespace boundkit::unicode

#endif  // BOUNDKIT_UNICODE_H_
