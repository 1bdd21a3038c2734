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

#ifndef BOUNDKIT_CORPUS_STATS_H_
#define BOUNDKIT_CORPUS_STATS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boundkit/pretokenizer.h"
#include "boundkit/vocab.h"

namespace boundkit {

struct TokenCounts {
  std::map<std::string, uint64_t, std::less<>> counts;
  uint64_t total = 0;

  void add(std::string_view piece, uint64_t n = 1);
  void merge(const TokenCounts& other);
};

// piece_count / word_count. Throws DataError when word_count is 0.
double token_ratio(uint64_t piece_count, uint64_t word_count);

// Shannon entropy in bits of the piece distribution. Throws DataError when
// total is 0.
double corpus_entropy(const TokenCounts& counts);

// Entropy in bits of the vocabulary's unigram distribution, excluding the
// reserved unknown piece.
double type_entropy(const Vocabulary& vocab);

struct LengthHistogram {
  std::map<size_t, size_t> counts;  // code points without mark -> pieces
  size_t total = 0;
  std::optional<double> mean;
};

LengthHistogram length_histogram(const Vocabulary& vocab);

// A corpus encoded by one model, with the word count that the tokens-per-word
// ratio divides by: whitespace words of the raw text for raw mode, words of
// the pretokenized text otherwise.
struct EncodedCorpus {
  std::vector<std::vector<std::string>> lines;
  uint64_t word_count = 0;
  uint64_t piece_count = 0;

  TokenCounts token_counts() const;
};

EncodedCorpus encode_corpus(std::span<const std::string> lines,
                            const Vocabulary& vocab, PretokMode mode);

struct StatsReport {
  std::string model_id;
  std::string corpus_id;
  uint64_t word_count = 0;
  uint64_t piece_count = 0;
  uint64_t distinct_pieces = 0;
  double tokens_per_word = 0.0;
  double corpus_entropy_bits = 0.0;
  double type_entropy_bits = 0.0;
  std::optional<double> perplexity;
};

StatsReport compute_stats(std::string model_id, std::string corpus_id,
                          const EncodedCorpus& corpus, const Vocabulary& vocab);

}  // namespace boundkit

#endif  // BOUNDKIT_CORPUS_STATS_H_
