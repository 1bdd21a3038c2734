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

#ifndef BOUNDKIT_PRETOKENIZER_H_
#define BOUNDKIT_PRETOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace boundkit {

// kRaw splits on Unicode whitespace only. kRuleBased additionally detaches
// leading and trailing punctuation, one code point per token, while keeping
// word-internal punctuation ("don't", "well-known") attached. kExternal treats
// the input as already tokenized and only splits on whitespace.
enum class PretokMode { kRaw, kRuleBased, kExternal };

std::string_view to_string(PretokMode mode);
// Accepts "raw", "rules", "external". Throws UsageError otherwise.
PretokMode parse_pretok_mode(std::string_view text);

// Splits a line into words. No normalization is applied; every non-space
// code point survives unchanged. Throws DataError on invalid UTF-8.
std::vector<std::string> pretokenize(std::string_view line, PretokMode mode);
std::vector<std::u32string> pretokenize(std::u32string_view line,
                                        PretokMode mode);

// Number of whitespace-delimited words.
size_t count_words(std::string_view line);

}  // namespace boundkit

#endif  // BOUNDKIT_PRETOKENIZER_H_
