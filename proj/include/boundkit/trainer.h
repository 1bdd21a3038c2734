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

#ifndef BOUNDKIT_TRAINER_H_
#define BOUNDKIT_TRAINER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boundkit/pretokenizer.h"
#include "boundkit/vocab.h"

namespace boundkit {

struct TrainerConfig {
  size_t target_vocab_size = 32000;
  // Fraction of prunable pieces kept per pruning round.
  double shrink_factor = 0.75;
  // Non-required seed candidates kept; 0 means min(100 * target, 1000000).
  size_t seed_max_size = 0;
  size_t seed_max_piece_len = 16;
  uint64_t seed_min_count = 2;
  int em_iters_per_round = 2;
  // Final refinement stops after this many EM steps, or earlier once the
  // relative log-likelihood gain drops below final_em_tolerance.
  int final_em_max_iters = 30;
  double final_em_tolerance = 1e-10;
  MarkingScheme scheme = MarkingScheme::kInit;
  PretokMode pretok = PretokMode::kRaw;
  char32_t meta_symbol = kDefaultMetaSymbol;
  int threads = 1;

  // Throws UsageError.
  void validate() const;
  size_t effective_seed_max_size() const;
};

// Distinct words in lattice space (see to_lattice_space) with corpus
// frequencies, sorted by word.
struct WordCount {
  std::u32string word;
  uint64_t freq = 0;
};
using WordTable = std::vector<WordCount>;

WordTable build_word_table(std::span<const std::string> lines,
                           const TrainerConfig& config);

struct SeedCandidate {
  std::u32string surface;
  uint64_t count = 0;

  bool operator==(const SeedCandidate&) const = default;
};

// Single code points and meta+code point pairs are required: they can never
// be pruned and guarantee every word stays segmentable.
bool is_required_piece(std::u32string_view surface, char32_t meta_symbol);

// Frequency-weighted substrings of the words, at most seed_max_piece_len code
// points long. Keeps the effective_seed_max_size() most frequent candidates
// with count >= seed_min_count, plus every required piece. Sorted by count
// descending, then surface. Throws DataError on an empty table.
std::vector<SeedCandidate> seed_vocabulary(const WordTable& words,
                                           const TrainerConfig& config);

// Unigram model over lattice-space piece surfaces.
struct UnigramModel {
  std::vector<std::u32string> pieces;
  std::vector<double> log_probs;
  std::vector<bool> required;

  size_t size() const { return pieces.size(); }
  size_t required_count() const;
  double probability_mass() const;

  // Initial probabilities proportional to the seed counts.
  static UnigramModel from_seeds(std::span<const SeedCandidate> seeds,
                                 char32_t meta_symbol);
  // Surfaces taken as stored; scores used as log-probabilities.
  static UnigramModel from_vocab(const Vocabulary& vocab);
};

struct EmResult {
  std::vector<double> log_probs;        // re-estimated
  std::vector<double> expected_counts;  // frequency-weighted posteriors
  double log_likelihood = 0.0;          // nats, under the input model
};

// One EM iteration: forward-backward over every word lattice, then
// re-normalized expected counts. Throws DataError naming the first word
// without a segmentation.
EmResult em_step(const WordTable& words, const UnigramModel& model,
                 int threads = 1);
// Same, for a vocabulary whose orientation matches the words'.
EmResult em_step(const WordTable& words, const Vocabulary& vocab);

struct PruneReport {
  size_t prunable_before = 0;
  size_t prunable_kept = 0;
  // Nothing could be removed without dropping required pieces or going
  // below the requested minimum size.
  bool clamped = false;
};

// Removes the prunable pieces whose removal costs the least corpus
// likelihood. A piece's loss sums, over words whose best path uses it,
// freq * (best path log-prob - best path log-prob without the piece). Keeps
// ceil(shrink_factor * prunable) pieces ranked by loss, then log-probability,
// then surface, but always removes at least one piece when any is prunable
// and never goes below min_size. Survivors are re-normalized.
UnigramModel prune(const UnigramModel& model, const WordTable& words,
                   double shrink_factor, size_t min_size = 0,
                   PruneReport* report = nullptr);

// Per-round record of a training run.
struct TrainTrace {
  struct Round {
    std::vector<double> log_likelihoods;  // one per EM step
    std::vector<double> masses;           // sum of probabilities after it
    size_t size_before_prune = 0;
    size_t size_after_prune = 0;          // 0 if the round did not prune
    double mass_after_prune = 0.0;
  };
  size_t seed_size = 0;
  size_t required_pieces = 0;
  std::vector<Round> rounds;
  std::vector<double> final_log_likelihoods;
  double final_mass = 0.0;
};

// Full pipeline: pretokenize, mark (Fin by reversal), seed, then alternate
// em_iters_per_round EM steps with pruning until the target size, and run a
// final EM refinement. Throws DataError on an empty corpus.
Vocabulary train(std::span<const std::string> lines,
                 const TrainerConfig& config, TrainTrace* trace = nullptr);
Vocabulary train(const WordTable& words, const TrainerConfig& config,
                 TrainTrace* trace = nullptr);

}  // namespace boundkit

#endif  // BOUNDKIT_TRAINER_H_
