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

#ifndef BOUNDKIT_EXPERIMENT_H_
#define BOUNDKIT_EXPERIMENT_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boundkit/bigram_lm.h"
#include "boundkit/corpus_stats.h"
#include "boundkit/morph_eval.h"
#include "boundkit/trainer.h"
#include "json.hpp"

namespace boundkit {

// One trained model configuration, e.g. RawInit or RulesFin.
struct Condition {
  MarkingScheme scheme = MarkingScheme::kInit;
  PretokMode pretok = PretokMode::kRaw;

  std::string name() const;
  bool operator==(const Condition&) const = default;
};

// The four combinations of {raw, rules} x {init, fin}.
std::vector<Condition> default_conditions();
// "raw:init,raw:fin,rules:init". Throws UsageError.
std::vector<Condition> parse_conditions(std::string_view text);

inline constexpr std::string_view kTrainCorpus = "train";
inline constexpr std::string_view kInDomainCorpus = "indomain";
inline constexpr std::string_view kOutOfDomainCorpus = "ood";

// Flat "key = value" configuration; '#' starts a comment. Relative paths are
// resolved against the directory of the file that sets them.
//
//   train, indomain, ood, lexicon      corpus and lexicon paths
//   conditions                         see parse_conditions
//   vocab_size, shrink, seed_max_len, seed_min_count, seed_max_size,
//   em_iters, final_em_iters, threads, meta, epsilon, fold_case
struct ExperimentConfig {
  std::vector<Condition> conditions = default_conditions();
  std::filesystem::path train_corpus;
  std::filesystem::path indomain_corpus;
  std::filesystem::path ood_corpus;
  std::optional<std::filesystem::path> lexicon;
  TrainerConfig trainer;  // scheme and pretok are set per condition
  double epsilon = kDefaultEpsilon;
  bool fold_case = false;

  // Throws UsageError on unknown keys or bad values.
  void set(std::string_view key, std::string_view value,
           const std::filesystem::path& base_dir = {});
  void validate() const;
  // Every setting as key/value strings, sorted by key.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

ExperimentConfig parse_experiment_config(
    std::istream& in, const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ConditionSummary {
  std::string name;
  std::string scheme;
  std::string pretok;
  size_t vocab_size = 0;
  double type_entropy_bits = 0.0;
  double probability_mass = 0.0;
  uint64_t bigram_types = 0;
  LengthHistogram lengths;
};

struct MorphSummary {
  std::string pretok;
  std::string init_model;
  std::string fin_model;
  size_t lexicon_size = 0;
  size_t coverage_init = 0;
  size_t coverage_fin = 0;
  size_t union_count = 0;
  size_t only_init = 0;
  size_t only_init_word_initial = 0;
  size_t only_fin = 0;
  size_t only_fin_non_initial = 0;
  size_t records = 0;
  std::optional<AgreementRegression> regression;
  std::string regression_error;
};

// Informational comparison of one directional finding against the observed
// values. Never asserted.
struct TrendRow {
  std::string measure;
  std::string label_a;
  std::string label_b;
  std::string expected;  // "a<b" or "a>b"
  std::string reference;
  double value_a = 0.0;
  double value_b = 0.0;
  bool same_direction = false;
};

struct ReportBundle {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ConditionSummary> conditions;
  std::vector<StatsReport> cells;
  std::vector<MorphSummary> morph;
  std::vector<TrendRow> trends;
  std::vector<std::string> warnings;

  const StatsReport* cell(std::string_view model,
                          std::string_view corpus) const;
  const ConditionSummary* condition(std::string_view name) const;
};

// Trains every condition, encodes the three corpora, computes the statistics
// and perplexities, and runs the morphology comparison for each pretok mode
// that has both an Init and a Fin condition. Writes into out_dir:
//   <cond>.vocab, <cond>.<corpus>.tok   models and encodings
//   table.tsv                           one row per (condition, corpus)
//   lengths.tsv                         piece length histograms
//   scores_<pretok>.tsv                 per-piece scores by agreement
//   report.json, report.txt
// Progress goes to `log` when given. A failing stage throws with the stage
// and condition in the message.
ReportBundle run_experiment(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir,
                            std::ostream* log = nullptr);

std::string render_report(const ReportBundle& bundle);
std::string render_table_tsv(const ReportBundle& bundle);

nlohmann::json to_json(const ReportBundle& bundle);
nlohmann::json to_json(const StatsReport& report);
nlohmann::json to_json(const AgreementRegression& regression);
ReportBundle bundle_from_json(const nlohmann::json& j);

}  // namespace boundkit

#endif  // BOUNDKIT_EXPERIMENT_H_
