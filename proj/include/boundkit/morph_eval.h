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

#ifndef BOUNDKIT_MORPH_EVAL_H_
#define BOUNDKIT_MORPH_EVAL_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boundkit/ols.h"
#include "boundkit/vocab.h"

namespace boundkit {

// Gold morpheme strings. "-ing" is suffix-bound, "co-" prefix-bound, "cat"
// free; hyphens are stripped and duplicates collapse. One string may be
// recorded under several boundness classes.
struct MorphLexicon {
  std::set<std::string, std::less<>> entries;
  std::set<std::string, std::less<>> suffix_bound;
  std::set<std::string, std::less<>> prefix_bound;
  std::set<std::string, std::less<>> free;
  size_t lines_read = 0;
  // Blank lines, bare hyphens, and entries with internal hyphens.
  size_t skipped = 0;
  bool fold_case = false;

  size_t size() const { return entries.size(); }
  bool contains(std::string_view bare) const;
};

// ASCII lower-casing; other code points are left alone.
std::string fold_case_ascii(std::string_view text);

// Throws DataError when no entry is read.
MorphLexicon load_lexicon(std::istream& in, bool fold_case = false);
MorphLexicon load_lexicon(const std::filesystem::path& path,
                          bool fold_case = false);

// Mark-stripped piece strings of a vocabulary, with the best score and the
// position classes under which each occurs. Pieces whose bare form is empty
// (the lone mark) are left out.
struct BareInfo {
  double best_score = 0.0;
  std::set<PositionClass> positions;
};
std::map<std::string, BareInfo> bare_pieces(const Vocabulary& vocab,
                                            bool fold_case = false);

struct Coverage {
  std::set<std::string> matched;
  size_t count = 0;
  double fraction = 0.0;  // count / |lexicon|
};

Coverage coverage(const Vocabulary& vocab, const MorphLexicon& lexicon);

// |matched(a) U matched(b)|
size_t union_coverage(const Vocabulary& a, const Vocabulary& b,
                      const MorphLexicon& lexicon);

struct ExclusiveMatch {
  std::string bare;
  std::set<PositionClass> positions;

  bool operator==(const ExclusiveMatch&) const = default;
};

struct ExclusiveMatches {
  std::vector<ExclusiveMatch> only_a;
  std::vector<ExclusiveMatch> only_b;
};

ExclusiveMatches exclusive_matches(const Vocabulary& a, const Vocabulary& b,
                                   const MorphLexicon& lexicon);

struct AgreementRecord {
  std::string bare_piece;
  std::optional<double> score_init;
  std::optional<double> score_fin;
  // Number of the two vocabularies in which the string is a matched
  // morpheme: 0, 1 or 2.
  int agreement = 0;
  bool is_morpheme = false;
};

// One record per distinct bare string of either vocabulary, sorted. When
// several pieces of one vocabulary share a bare string (e.g. "▁cat" and
// "cat"), the highest score is used.
std::vector<AgreementRecord> build_agreement_table(
    const Vocabulary& vocab_init, const Vocabulary& vocab_fin,
    const MorphLexicon& lexicon);

struct AgreementRegression {
  OlsResult ols;  // predictors: intercept, agreement, model_fin
  std::map<int, double> group_means;  // agreement level -> mean score
  std::map<int, size_t> group_sizes;
};

// Long format: one row per (record, model) with an observed score.
// y = score, x = [1, agreement, 1 if the score comes from the Fin model].
AgreementRegression regress_agreement(
    std::span<const AgreementRecord> records);

// TSV with header "bare_piece model score agreement is_morpheme", one row
// per observed score. Returns the number of data rows.
size_t export_score_distributions(std::span<const AgreementRecord> records,
                                  std::ostream& out);

}  // namespace boundkit

#endif  // BOUNDKIT_MORPH_EVAL_H_
