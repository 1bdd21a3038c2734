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

#include "boundkit/bigram_lm.h"

#include <cmath>

#include "boundkit/error.h"

namespace boundkit {
namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

BigramModel BigramModel::fit(std::span<const std::vector<std::string>> lines,
                             double epsilon) {
  if (lines.empty()) throw DataError("cannot fit a bigram model on an empty corpus");
  if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
  BigramModel model;
  model.epsilon_ = epsilon;
  model.context_counts_.assign(3, 0);
  for (const auto& line : lines) {
    uint32_t prev = kBos;
    for (const std::string& piece : line) {
      auto [it, inserted] = model.ids_.try_emplace(
          piece, static_cast<uint32_t>(model.context_counts_.size()));
      if (inserted) model.context_counts_.push_back(0);
      ++model.context_counts_[prev];
      ++model.bigrams_[key(prev, it->second)];
      prev = it->second;
    }
    ++model.context_counts_[prev];
    ++model.bigrams_[key(prev, kEos)];
  }
  return model;
}

uint32_t BigramModel::type_id(std::string_view piece) const {
  const auto it = ids_.find(std::string(piece));
  return it == ids_.end() ? kUnknown : it->second;
}

uint64_t BigramModel::bigram_count(uint32_t context, uint32_t next) const {
  const auto it = bigrams_.find(key(context, next));
  return it == bigrams_.end() ? 0 : it->second;
}

double BigramModel::probability(uint32_t context, uint32_t next) const {
  const auto v = static_cast<double>(vocab_size());
  return (static_cast<double>(bigram_count(context, next)) + epsilon_) /
         (static_cast<double>(context_count(context)) + epsilon_ * v);
}

BigramModel BigramModel::with_epsilon(double epsilon) const {
  if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
  BigramModel copy = *this;
  copy.epsilon_ = epsilon;
  return copy;
}

PerplexityResult evaluate(const BigramModel& model,
                          std::span<const std::vector<std::string>> lines) {
  if (lines.empty()) throw DataError("cannot evaluate an empty corpus");
  CompensatedSum log2_sum;
  PerplexityResult result;
  for (const auto& line : lines) {
    uint32_t prev = BigramModel::kBos;
    for (const std::string& piece : line) {
      const uint32_t id = model.type_id(piece);
      if (id == BigramModel::kUnknown) ++result.unknown_tokens;
      log2_sum.add(std::log2(model.probability(prev, id)));
      prev = id;
    }
    log2_sum.add(std::log2(model.probability(prev, BigramModel::kEos)));
    result.predicted_tokens += line.size() + 1;
  }
  result.log2_prob = log2_sum.value();
  result.perplexity = std::exp2(-result.log2_prob /
                                static_cast<double>(result.predicted_tokens));
  return result;
}

double perplexity(const BigramModel& model,
                  std::span<const std::vector<std::string>> lines) {
  return evaluate(model, lines).perplexity;
}

}  // namespace boundkit
