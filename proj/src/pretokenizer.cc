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

#include "boundkit/pretokenizer.h"

#include "boundkit/error.h"
#include "boundkit/unicode.h"

namespace boundkit {
namespace {

void split_punctuation(std::u32string_view word,
                       std::vector<std::u32string>* out) {
  size_t begin = 0;
  size_t end = word.size();
  while (begin < end && unicode::is_punctuation(word[begin])) ++begin;
  while (end > begin && unicode::is_punctuation(word[end - 1])) --end;
  for (size_t i = 0; i < begin; ++i) out->emplace_back(1, word[i]);
  if (begin < end) out->emplace_back(word.substr(begin, end - begin));
  for (size_t i = end; i < word.size(); ++i) out->emplace_back(1, word[i]);
}

}  // namespace

std::string_view to_string(PretokMode mode) {
  switch (mode) {
    case PretokMode::kRaw:
      return "raw";
    case PretokMode::kRuleBased:
      return "rules";
    case PretokMode::kExternal:
      break;
  }
  return "external";
}

PretokMode parse_pretok_mode(std::string_view text) {
  if (text == "raw") return PretokMode::kRaw;
  if (text == "rules") return PretokMode::kRuleBased;
  if (text == "external") return PretokMode::kExternal;
  throw UsageError("unknown pretokenization mode '" + std::string(text) +
                   "' (expected raw, rules or external)");
}

std::vector<std::u32string> pretokenize(std::u32string_view line,
                                        PretokMode mode) {
  std::vector<std::u32string> words;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && unicode::is_whitespace(line[i])) ++i;
    const size_t start = i;
    while (i < line.size() && !unicode::is_whitespace(line[i])) ++i;
    if (i == start) break;
    const std::u32string_view word = line.substr(start, i - start);
    if (mode == PretokMode::kRuleBased) {
      split_punctuation(word, &words);
    } else {
      words.emplace_back(word);
    }
  }
  return words;
}

std::vector<std::string> pretokenize(std::string_view line, PretokMode mode) {
  const auto words = pretokenize(unicode::decode_utf8(line), mode);
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(unicode::encode_utf8(w));
  return out;
}

size_t count_words(std::string_view line) {
  return pretokenize(unicode::decode_utf8(line), PretokMode::kRaw).size();
}

}  // namespace boundkit
