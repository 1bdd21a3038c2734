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

#include "boundkit/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "boundkit/error.h"
#include "boundkit/segmenter.h"
#include "boundkit/unicode.h"

namespace boundkit {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Added to every expected count in the M-step so that pieces with vanishing
// posterior mass keep a finite log-probability.
constexpr double kPseudoCount = 1e-8;

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

struct EmAccumulator {
  std::vector<double> expected;
  double log_likelihood = 0.0;
  size_t failed_word = std::numeric_limits<size_t>::max();
};

void accumulate_expectations(const WordTable& words, size_t begin, size_t end,
                             const PieceIndex& index,
                             std::span<const double> scores,
                             EmAccumulator* acc) {
  std::vector<double> alpha;
  std::vector<double> beta;
  for (size_t w = begin; w < end; ++w) {
    const Lattice lattice(words[w].word, index, scores, kNegInf);
    const size_t n = lattice.length();
    const auto edges = lattice.edges();
    // Edges are ordered by begin position, so a forward sweep sees every
    // edge into a node before any edge out of it.
    alpha.assign(n + 1, kNegInf);
    alpha[0] = 0.0;
    for (const LatticeEdge& e : edges) {
      if (e.piece < 0) continue;
      alpha[e.end] = log_add(alpha[e.end], alpha[e.begin] + e.score);
    }
    const double z = alpha[n];
    if (z == kNegInf) {
      acc->failed_word = w;
      return;
    }
    beta.assign(n + 1, kNegInf);
    beta[n] = 0.0;
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
      if (it->piece < 0) continue;
      beta[it->begin] = log_add(beta[it->begin], it->score + beta[it->end]);
    }
    const auto freq = static_cast<double>(words[w].freq);
    for (const LatticeEdge& e : edges) {
      if (e.piece < 0) continue;
      acc->expected[e.piece] +=
          freq * std::exp(alpha[e.begin] + e.score + beta[e.end] - z);
    }
    acc->log_likelihood += freq * z;
  }
}

void renormalize(std::vector<double>* log_probs) {
  double mass = 0.0;
  for (double lp : *log_probs) mass += std::exp(lp);
  const double log_mass = std::log(mass);
  for (double& lp : *log_probs) lp -= log_mass;
}

}  // namespace

void TrainerConfig::validate() const {
  if (target_vocab_size == 0) throw UsageError("vocab size must be positive");
  if (!(shrink_factor > 0.0 && shrink_factor < 1.0)) {
    throw UsageError("shrink factor must lie in (0, 1)");
  }
  if (seed_max_piece_len == 0) {
    throw UsageError("seed max piece length must be positive");
  }
  if (seed_min_count == 0) throw UsageError("seed min count must be positive");
  if (em_iters_per_round < 1) {
    throw UsageError("EM iterations per round must be positive");
  }
  if (final_em_max_iters < 0) {
    throw UsageError("final EM iterations must be non-negative");
  }
  if (threads < 1) throw UsageError("thread count must be positive");
}

size_t TrainerConfig::effective_seed_max_size() const {
  if (seed_max_size > 0) return seed_max_size;
  return std::min<size_t>(100 * target_vocab_size, 1000000);
}

WordTable build_word_table(std::span<const std::string> lines,
                           const TrainerConfig& config) {
  std::unordered_map<std::u32string, uint64_t> counts;
  for (const std::string& line : lines) {
    for (const auto& word : pretokenize(unicode::decode_utf8(line), config.pretok)) {
      ++counts[to_lattice_space(word, config.scheme, config.meta_symbol)];
    }
  }
  WordTable table;
  table.reserve(counts.size());
  for (auto& [word, freq] : counts) table.push_back({word, freq});
  std::sort(table.begin(), table.end(),
            [](const WordCount& a, const WordCount& b) { return a.word < b.word; });
  return table;
}

bool is_required_piece(std::u32string_view surface, char32_t meta_symbol) {
  return surface.size() == 1 ||
         (surface.size() == 2 && surface[0] == meta_symbol);
}

std::vector<SeedCandidate> seed_vocabulary(const WordTable& words,
                                           const TrainerConfig& config) {
  if (words.empty()) throw DataError("empty corpus");
  const std::u32string unk = unicode::decode_utf8(kUnkSurface);
  std::unordered_map<std::u32string, uint64_t> counts;
  for (const WordCount& wc : words) {
    const std::u32string& w = wc.word;
    for (size_t i = 0; i < w.size(); ++i) {
      const size_t max_len = std::min(config.seed_max_piece_len, w.size() - i);
      for (size_t len = 1; len <= max_len; ++len) {
        counts[w.substr(i, len)] += wc.freq;
      }
    }
    // Marked first character, even when longer pieces are disabled.
    if (config.seed_max_piece_len < 2 && w.size() >= 2 &&
        w[0] == config.meta_symbol) {
      counts[w.substr(0, 2)] += wc.freq;
    }
  }

  std::vector<SeedCandidate> required;
  std::vector<SeedCandidate> optional;
  for (auto& [surface, count] : counts) {
    if (is_required_piece(surface, config.meta_symbol)) {
      required.push_back({surface, count});
    } else if (count >= config.seed_min_count && surface != unk) {
      optional.push_back({surface, count});
    }
  }
  const auto by_count = [](const SeedCandidate& a, const SeedCandidate& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.surface < b.surface;
  };
  const size_t limit = config.effective_seed_max_size();
  if (optional.size() > limit) {
    std::partial_sort(optional.begin(), optional.begin() + limit,
                      optional.end(), by_count);
    optional.resize(limit);
  }
  required.insert(required.end(), optional.begin(), optional.end());
  std::sort(required.begin(), required.end(), by_count);
  return required;
}

size_t UnigramModel::required_count() const {
  return static_cast<size_t>(std::count(required.begin(), required.end(), true));
}

double UnigramModel::probability_mass() const {
  double mass = 0.0;
  for (double lp : log_probs) mass += std::exp(lp);
  return mass;
}

UnigramModel UnigramModel::from_seeds(std::span<const SeedCandidate> seeds,
                                      char32_t meta_symbol) {
  UnigramModel model;
  double total = 0.0;
  for (const SeedCandidate& s : seeds) total += static_cast<double>(s.count);
  const double log_total = std::log(total);
  for (const SeedCandidate& s : seeds) {
    model.pieces.push_back(s.surface);
    model.log_probs.push_back(std::log(static_cast<double>(s.count)) - log_total);
    model.required.push_back(is_required_piece(s.surface, meta_symbol));
  }
  return model;
}

UnigramModel UnigramModel::from_vocab(const Vocabulary& vocab) {
  UnigramModel model;
  const char32_t meta = vocab.meta_symbol();
  for (const Piece& p : vocab.pieces()) {
    std::u32string s = unicode::decode_utf8(p.surface);
    bool required = s.size() == 1;
    if (s.size() == 2) {
      required = vocab.scheme() == MarkingScheme::kInit ? s[0] == meta
                                                        : s[1] == meta;
    }
    model.pieces.push_back(std::move(s));
    model.log_probs.push_back(p.score);
    model.required.push_back(required);
  }
  return model;
}

EmResult em_step(const WordTable& words, const UnigramModel& model,
                 int threads) {
  const PieceIndex index(model.pieces);
  const size_t chunks =
      std::max<size_t>(1, std::min<size_t>(threads, words.size()));
  std::vector<EmAccumulator> parts(chunks);
  for (auto& p : parts) p.expected.assign(model.size(), 0.0);
  const auto range = [&](size_t c) { return c * words.size() / chunks; };
  if (chunks == 1) {
    accumulate_expectations(words, 0, words.size(), index, model.log_probs,
                            &parts[0]);
  } else {
    std::vector<std::jthread> workers;
    for (size_t c = 0; c < chunks; ++c) {
      workers.emplace_back([&, c] {
        accumulate_expectations(words, range(c), range(c + 1), index,
                                model.log_probs, &parts[c]);
      });
    }
  }

  EmResult result;
  result.expected_counts.assign(model.size(), 0.0);
  // Fixed merge order keeps results reproducible for a given thread count.
  for (const EmAccumulator& p : parts) {
    if (p.failed_word != std::numeric_limits<size_t>::max()) {
      throw DataError("word '" + unicode::encode_utf8(words[p.failed_word].word) +
                      "' has no segmentation under the vocabulary");
    }
    for (size_t i = 0; i < model.size(); ++i) {
      result.expected_counts[i] += p.expected[i];
    }
    result.log_likelihood += p.log_likelihood;
  }

  double total = 0.0;
  for (double c : result.expected_counts) total += c + kPseudoCount;
  const double log_total = std::log(total);
  result.log_probs.resize(model.size());
  for (size_t i = 0; i < model.size(); ++i) {
    result.log_probs[i] =
        std::log(result.expected_counts[i] + kPseudoCount) - log_total;
  }
  return result;
}

EmResult em_step(const WordTable& words, const Vocabulary& vocab) {
  return em_step(words, UnigramModel::from_vocab(vocab));
}

UnigramModel prune(const UnigramModel& model, const WordTable& words,
                   double shrink_factor, size_t min_size,
                   PruneReport* report) {
  const PieceIndex index(model.pieces);
  std::vector<double> loss(model.size(), 0.0);
  std::vector<int32_t> on_path;
  for (const WordCount& wc : words) {
    const Lattice lattice(wc.word, index, model.log_probs, kNegInf);
    const Segmentation best = viterbi(lattice);
    if (!best.found() || best.score == kNegInf) {
      throw DataError("word '" + unicode::encode_utf8(wc.word) +
                      "' has no segmentation under the vocabulary");
    }
    on_path.clear();
    for (uint32_t e : best.edges) {
      const int32_t piece = lattice.edges()[e].piece;
      if (piece >= 0 && !model.required[piece]) on_path.push_back(piece);
    }
    std::sort(on_path.begin(), on_path.end());
    on_path.erase(std::unique(on_path.begin(), on_path.end()), on_path.end());
    const auto freq = static_cast<double>(wc.freq);
    for (int32_t piece : on_path) {
      const Segmentation alt = viterbi(lattice, piece);
      loss[piece] += alt.found()
                         ? freq * (best.score - alt.score)
                         : std::numeric_limits<double>::infinity();
    }
  }

  std::vector<size_t> prunable;
  for (size_t i = 0; i < model.size(); ++i) {
    if (!model.required[i]) prunable.push_back(i);
  }
  const size_t required = model.size() - prunable.size();
  size_t keep = static_cast<size_t>(
      std::ceil(shrink_factor * static_cast<double>(prunable.size())));
  if (!prunable.empty() && keep >= prunable.size()) keep = prunable.size() - 1;
  if (min_size > required) keep = std::max(keep, min_size - required);
  keep = std::min(keep, prunable.size());

  std::sort(prunable.begin(), prunable.end(), [&](size_t a, size_t b) {
    if (loss[a] != loss[b]) return loss[a] > loss[b];
    if (model.log_probs[a] != model.log_probs[b]) {
      return model.log_probs[a] > model.log_probs[b];
    }
    return model.pieces[a] < model.pieces[b];
  });
  std::vector<bool> survives(model.required);
  for (size_t k = 0; k < keep; ++k) survives[prunable[k]] = true;

  UnigramModel out;
  for (size_t i = 0; i < model.size(); ++i) {
    if (!survives[i]) continue;
    out.pieces.push_back(model.pieces[i]);
    out.log_probs.push_back(model.log_probs[i]);
    out.required.push_back(model.required[i]);
  }
  renormalize(&out.log_probs);

  if (report != nullptr) {
    report->prunable_before = prunable.size();
    report->prunable_kept = keep;
    report->clamped = keep == prunable.size();
  }
  return out;
}

Vocabulary train(std::span<const std::string> lines,
                 const TrainerConfig& config, TrainTrace* trace) {
  config.validate();
  if (lines.empty()) throw DataError("empty corpus");
  return train(build_word_table(lines, config), config, trace);
}

Vocabulary train(const WordTable& words, const TrainerConfig& config,
                 TrainTrace* trace) {
  config.validate();
  const auto seeds = seed_vocabulary(words, config);
  UnigramModel model = UnigramModel::from_seeds(seeds, config.meta_symbol);
  const size_t required = model.required_count();
  if (config.target_vocab_size < required) {
    throw DataError("vocab size " + std::to_string(config.target_vocab_size) +
                    " is below the " + std::to_string(required) +
                    " required character pieces");
  }
  TrainTrace local;
  TrainTrace& t = trace != nullptr ? *trace : local;
  t = TrainTrace{};
  t.seed_size = model.size();
  t.required_pieces = required;

  while (true) {
    TrainTrace::Round& round = t.rounds.emplace_back();
    for (int it = 0; it < config.em_iters_per_round; ++it) {
      EmResult r = em_step(words, model, config.threads);
      model.log_probs = std::move(r.log_probs);
      round.log_likelihoods.push_back(r.log_likelihood);
      round.masses.push_back(model.probability_mass());
    }
    round.size_before_prune = model.size();
    if (model.size() <= config.target_vocab_size) break;
    model = prune(model, words, config.shrink_factor, config.target_vocab_size);
    round.size_after_prune = model.size();
    round.mass_after_prune = model.probability_mass();
  }

  double previous = 0.0;
  for (int it = 0; it < config.final_em_max_iters; ++it) {
    EmResult r = em_step(words, model, config.threads);
    model.log_probs = std::move(r.log_probs);
    t.final_log_likelihoods.push_back(r.log_likelihood);
    if (it > 0 && r.log_likelihood - previous <=
                      config.final_em_tolerance * std::abs(previous)) {
      break;
    }
    previous = r.log_likelihood;
  }
  t.final_mass = model.probability_mass();

  std::vector<Piece> pieces;
  pieces.reserve(model.size());
  double min_score = 0.0;
  for (size_t i = 0; i < model.size(); ++i) {
    std::u32string s = model.pieces[i];
    if (config.scheme == MarkingScheme::kFin) std::reverse(s.begin(), s.end());
    pieces.push_back({unicode::encode_utf8(s), model.log_probs[i]});
    min_score = std::min(min_score, model.log_probs[i]);
  }
  return Vocabulary(std::move(pieces), config.scheme, config.meta_symbol,
                    min_score - kUnkPenalty);
}

}  // namespace boundkit
