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

#include "boundkit/morph_eval.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "boundkit/error.h"
#include "boundkit/unicode.h"

namespace boundkit {

bool MorphLexicon::contains(std::string_view bare) const {
  return entries.find(bare) != entries.end();
}

std::string fold_case_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

MorphLexicon load_lexicon(std::istream& in, bool fold_case) {
  MorphLexicon lex;
  lex.fold_case = fold_case;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++lex.lines_read;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      unicode::codepoint_length(line);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    std::string_view s(line);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    const bool suffix = s.starts_with('-');
    if (suffix) s.remove_prefix(1);
    const bool prefix = s.ends_with('-');
    if (prefix) s.remove_suffix(1);
    if (s.empty() || s.find('-') != std::string_view::npos) {
      ++lex.skipped;
      continue;
    }
    std::string entry = fold_case ? fold_case_ascii(s) : std::string(s);
    if (suffix) lex.suffix_bound.insert(entry);
    if (prefix) lex.prefix_bound.insert(entry);
    if (!suffix && !prefix) lex.free.insert(entry);
    lex.entries.insert(std::move(entry));
  }
  if (lex.entries.empty()) throw DataError("empty morpheme lexicon");
  return lex;
}

MorphLexicon load_lexicon(const std::filesystem::path& path, bool fold_case) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return load_lexicon(in, fold_case);
}

std::map<std::string, BareInfo> bare_pieces(const Vocabulary& vocab,
                                            bool fold_case) {
  std::map<std::string, BareInfo> out;
  for (const Piece& p : vocab.pieces()) {
    auto stripped = strip_mark(p.surface, vocab.scheme(), vocab.meta_symbol());
    if (stripped.bare.empty()) continue;
    if (fold_case) stripped.bare = fold_case_ascii(stripped.bare);
    auto [it, inserted] = out.try_emplace(stripped.bare);
    if (inserted || p.score > it->second.best_score) {
      it->second.best_score = p.score;
    }
    it->second.positions.insert(stripped.position);
  }
  return out;
}

Coverage coverage(const Vocabulary& vocab, const MorphLexicon& lexicon) {
  Coverage c;
  for (const auto& [bare, info] : bare_pieces(vocab, lexicon.fold_case)) {
    if (lexicon.contains(bare)) c.matched.insert(bare);
  }
  c.count = c.matched.size();
  c.fraction = lexicon.size() == 0 ? 0.0
                                   : static_cast<double>(c.count) /
                                         static_cast<double>(lexicon.size());
  return c;
}

size_t union_coverage(const Vocabulary& a, const Vocabulary& b,
                      const MorphLexicon& lexicon) {
  std::set<std::string> all = coverage(a, lexicon).matched;
  const auto mb = coverage(b, lexicon).matched;
  all.insert(mb.begin(), mb.end());
  return all.size();
}

ExclusiveMatches exclusive_matches(const Vocabulary& a, const Vocabulary& b,
                                   const MorphLexicon& lexicon) {
  const auto pa = bare_pieces(a, lexicon.fold_case);
  const auto pb = bare_pieces(b, lexicon.fold_case);
  const auto only = [&](const std::map<std::string, BareInfo>& mine,
                        const std::map<std::string, BareInfo>& theirs) {
    std::vector<ExclusiveMatch> out;
    for (const auto& [bare, info] : mine) {
      if (lexicon.contains(bare) && !theirs.contains(bare)) {
        out.push_back({bare, info.positions});
      }
    }
    return out;
  };
  return {only(pa, pb), only(pb, pa)};
}

std::vector<AgreementRecord> build_agreement_table(
    const Vocabulary& vocab_init, const Vocabulary& vocab_fin,
    const MorphLexicon& lexicon) {
  const auto pi = bare_pieces(vocab_init, lexicon.fold_case);
  const auto pf = bare_pieces(vocab_fin, lexicon.fold_case);
  std::set<std::string> all;
  for (const auto& [bare, info] : pi) all.insert(bare);
  for (const auto& [bare, info] : pf) all.insert(bare);

  std::vector<AgreementRecord> records;
  records.reserve(all.size());
  for (const std::string& bare : all) {
    AgreementRecord r;
    r.bare_piece = bare;
    if (auto it = pi.find(bare); it != pi.end()) r.score_init = it->second.best_score;
    if (auto it = pf.find(bare); it != pf.end()) r.score_fin = it->second.best_score;
    r.is_morpheme = lexicon.contains(bare);
    if (r.is_morpheme) {
      r.agreement = (r.score_init ? 1 : 0) + (r.score_fin ? 1 : 0);
    }
    records.push_back(std::move(r));
  }
  return records;
}

AgreementRegression regress_agreement(
    std::span<const AgreementRecord> records) {
  std::vector<double> design;
  std::vector<double> y;
  AgreementRegression out;
  std::map<int, double> sums;
  const auto add_row = [&](double score, int agreement, double model_fin) {
    design.insert(design.end(), {1.0, static_cast<double>(agreement), model_fin});
    y.push_back(score);
    sums[agreement] += score;
    ++out.group_sizes[agreement];
  };
  for (const AgreementRecord& r : records) {
    if (r.score_init) add_row(*r.score_init, r.agreement, 0.0);
    if (r.score_fin) add_row(*r.score_fin, r.agreement, 1.0);
  }
  const std::vector<std::string> names = {"intercept", "agreement", "model_fin"};
  out.ols = fit_ols(names, design, y);
  for (const auto& [level, sum] : sums) {
    out.group_means[level] = sum / static_cast<double>(out.group_sizes[level]);
  }
  return out;
}

size_t export_score_distributions(std::span<const AgreementRecord> records,
                                  std::ostream& out) {
  out << "bare_piece\tmodel\tscore\tagreement\tis_morpheme\n";
  size_t rows = 0;
  const auto row = [&](const AgreementRecord& r, std::string_view model,
                       double score) {
    out << r.bare_piece << '\t' << model << '\t' << format_score(score) << '\t'
        << r.agreement << '\t' << (r.is_morpheme ? 1 : 0) << '\n';
    ++rows;
  };
  for (const AgreementRecord& r : records) {
    if (r.score_init) row(r, "init", *r.score_init);
    if (r.score_fin) row(r, "fin", *r.score_fin);
  }
  if (!out) throw DataError("failed to write score export");
  return rows;
}

}  // namespace boundkit
