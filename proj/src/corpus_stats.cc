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

#include "boundkit/corpus_stats.h"

#include <cmath>

#include "boundkit/error.h"
#include "boundkit/segmenter.h"
#include "boundkit/unicode.h"

namespace boundkit {

void TokenCounts::add(std::string_view piece, uint64_t n) {
  auto it = counts.find(piece);
  if (it == counts.end()) it = counts.emplace(std::string(piece), 0).first;
  it->second += n;
  total += n;
}

void TokenCounts::merge(const TokenCounts& other) {
  for (const auto& [piece, n] : other.counts) add(piece, n);
}

double token_ratio(uint64_t piece_count, uint64_t word_count) {
  if (word_count == 0) throw DataError("token ratio needs at least one word");
  return static_cast<double>(piece_count) / static_cast<double>(word_count);
}

double corpus_entropy(const TokenCounts& counts) {
  if (counts.total == 0) throw DataError("entropy of an empty count table");
  const auto total = static_cast<double>(counts.total);
  double h = 0.0;
  for (const auto& [piece, n] : counts.counts) {
    if (n == 0) continue;
    const double p = static_cast<double>(n) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double type_entropy(const Vocabulary& vocab) {
  double h = 0.0;
  for (const Piece& p : vocab.pieces()) {
    // log2(exp(s)) = s / ln 2
    h -= std::exp(p.score) * p.score / std::log(2.0);
  }
  return h;
}

LengthHistogram length_histogram(const Vocabulary& vocab) {
  LengthHistogram hist;
  size_t length_sum = 0;
  for (const Piece& p : vocab.pieces()) {
    const auto bare = strip_mark(p.surface, vocab.scheme(), vocab.meta_symbol());
    const size_t len = unicode::codepoint_length(bare.bare);
    ++hist.counts[len];
    ++hist.total;
    length_sum += len;
  }
  if (hist.total > 0) {
    hist.mean = static_cast<double>(length_sum) / static_cast<double>(hist.total);
  }
  return hist;
}

TokenCounts EncodedCorpus::token_counts() const {
  TokenCounts counts;
  for (const auto& line : lines) {
    for (const auto& piece : line) counts.add(piece);
  }
  return counts;
}

EncodedCorpus encode_corpus(std::span<const std::string> lines,
                            const Vocabulary& vocab, PretokMode mode) {
  Encoder encoder(vocab);
  EncodedCorpus out;
  out.lines.reserve(lines.size());
  for (const std::string& line : lines) {
    const auto words = pretokenize(line, mode);
    std::vector<std::string> pieces;
    for (const auto& w : words) {
      const auto& wp = encoder.encode_word(w);
      pieces.insert(pieces.end(), wp.begin(), wp.end());
    }
    // Raw and external text is already whitespace-delimited, so the
    // pretokenized words are the space-delimited words of the input.
    out.word_count += words.size();
    out.piece_count += pieces.size();
    out.lines.push_back(std::move(pieces));
  }
  return out;
}

StatsReport compute_stats(std::string model_id, std::string corpus_id,
                          const EncodedCorpus& corpus, const Vocabulary& vocab) {
  const TokenCounts counts = corpus.token_counts();
  StatsReport r;
  r.model_id = std::move(model_id);
  r.corpus_id = std::move(corpus_id);
  r.word_count = corpus.word_count;
  r.piece_count = corpus.piece_count;
  r.distinct_pieces = counts.counts.size();
  r.tokens_per_word = token_ratio(corpus.piece_count, corpus.word_count);
  r.corpus_entropy_bits = corpus_entropy(counts);
  r.type_entropy_bits = type_entropy(vocab);
  return r;
}

}  // namespace boundkit
