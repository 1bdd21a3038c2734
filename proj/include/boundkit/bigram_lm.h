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

#ifndef BOUNDKIT_BIGRAM_LM_H_
#define BOUNDKIT_BIGRAM_LM_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace boundkit {

inline constexpr double kDefaultEpsilon = 0.005;

// Add-epsilon smoothed bigram model over piece sequences. Every line is
// framed by sentence-begin and sentence-end symbols; pieces unseen at fit
// time share one unknown type. The type inventory V counts the observed
// pieces plus the two framing symbols and the unknown type.
class BigramModel {
 public:
  static constexpr uint32_t kBos = 0;
  static constexpr uint32_t kEos = 1;
  static constexpr uint32_t kUnknown = 2;

  // Throws DataError on an empty corpus, UsageError on epsilon <= 0.
  static BigramModel fit(std::span<const std::vector<std::string>> lines,
                         double epsilon = kDefaultEpsilon);

  double epsilon() const { return epsilon_; }
  uint64_t vocab_size() const { return context_counts_.size(); }

  // Piece id, or kUnknown when the piece was not seen at fit time.
  uint32_t type_id(std::string_view piece) const;

  // Number of times `context` preceded another token.
  uint64_t context_count(uint32_t context) const {
    return context_counts_[context];
  }
  uint64_t bigram_count(uint32_t context, uint32_t next) const;

  // (count(context, next) + eps) / (count(context) + eps * V)
  double probability(uint32_t context, uint32_t next) const;

  // Same counts, different smoothing constant.
  BigramModel with_epsilon(double epsilon) const;

 private:
  static uint64_t key(uint32_t a, uint32_t b) {
    return (static_cast<uint64_t>(a) << 32) | b;
  }

  double epsilon_ = kDefaultEpsilon;
  std::unordered_map<std::string, uint32_t> ids_;
  std::vector<uint64_t> context_counts_;
  std::unordered_map<uint64_t, uint64_t> bigrams_;
};

struct PerplexityResult {
  double perplexity = 0.0;
  double log2_prob = 0.0;  // sum over predicted tokens
  uint64_t predicted_tokens = 0;  // pieces plus one sentence end per line
  uint64_t unknown_tokens = 0;
};

// Base-2 per-token perplexity. Throws DataError on an empty corpus.
PerplexityResult evaluate(const BigramModel& model,
                          std::span<const std::vector<std::string>> lines);
double perplexity(const BigramModel& model,
                  std::span<const std::vector<std::string>> lines);

}  // namespace boundkit

#endif  // BOUNDKIT_BIGRAM_LM_H_
