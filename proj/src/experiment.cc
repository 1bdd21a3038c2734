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

#include "boundkit/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "boundkit/error.h"
#include "boundkit/io.h"
#include "boundkit/segmenter.h"
#include "boundkit/unicode.h"

namespace boundkit {
namespace {

using nlohmann::json;

std::string pretok_label(PretokMode mode) {
  switch (mode) {
    case PretokMode::kRaw:
      return "Raw";
    case PretokMode::kRuleBased:
      return "Rules";
    case PretokMode::kExternal:
      break;
  }
  return "Ext";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError("invalid value '" + std::string(value) + "' for " +
                     std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("invalid boolean '" + std::string(value) + "' for " +
                   std::string(key));
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              std::string_view value) {
  std::filesystem::path p{std::string(value)};
  return p.is_relative() && !base.empty() ? base / p : p;
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN()
                     : j.get<double>();
}

std::string fixed(double x, int decimals) {
  if (!std::isfinite(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  return buf;
}

std::string pad_left(const std::string& s, size_t width) {
  const size_t len = unicode::codepoint_length(s);
  return len >= width ? s : std::string(width - len, ' ') + s;
}

std::string pad_right(const std::string& s, size_t width) {
  const size_t len = unicode::codepoint_length(s);
  return len >= width ? s : s + std::string(width - len, ' ');
}

template <typename Fn>
auto stage(std::string_view name, std::string_view condition, Fn&& fn)
    -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + " [" + std::string(condition) +
                              "]: " + e.what());
  } catch (const std::exception& e) {
    throw InvariantError(std::string(name) + " [" + std::string(condition) +
                         "]: " + e.what());
  }
}

double cell_value(const ReportBundle& b, const std::string& model,
                  std::string_view corpus, double StatsReport::*field) {
  const StatsReport* c = b.cell(model, corpus);
  return c == nullptr ? std::numeric_limits<double>::quiet_NaN() : c->*field;
}

std::vector<TrendRow> build_trends(const ReportBundle& bundle) {
  std::vector<TrendRow> rows;
  for (PretokMode mode :
       {PretokMode::kRaw, PretokMode::kRuleBased, PretokMode::kExternal}) {
    const std::string init = Condition{MarkingScheme::kInit, mode}.name();
    const std::string fin = Condition{MarkingScheme::kFin, mode}.name();
    if (bundle.condition(init) == nullptr || bundle.condition(fin) == nullptr) {
      continue;
    }
    const bool raw = mode == PretokMode::kRaw;
    const auto add = [&](std::string measure, double a, double b,
                         bool init_smaller, std::string reference) {
      TrendRow r;
      r.measure = std::move(measure);
      r.label_a = init;
      r.label_b = fin;
      r.expected = init_smaller ? "a<b" : "a>b";
      r.reference = std::move(reference);
      r.value_a = a;
      r.value_b = b;
      r.same_direction = init_smaller ? a < b : a > b;
      rows.push_back(std::move(r));
    };
    add("tokens/word (train)",
        cell_value(bundle, init, kTrainCorpus, &StatsReport::tokens_per_word),
        cell_value(bundle, fin, kTrainCorpus, &StatsReport::tokens_per_word),
        raw, raw ? "1.356 vs 1.393" : "1.208 vs 1.200");
    add("type entropy (bits)", bundle.condition(init)->type_entropy_bits,
        bundle.condition(fin)->type_entropy_bits, true,
        raw ? "7.509 vs 7.549" : "7.285 vs 7.400");
    const auto ppl = [&](const std::string& model) {
      const StatsReport* c = bundle.cell(model, kTrainCorpus);
      return c != nullptr && c->perplexity
                 ? *c->perplexity
                 : std::numeric_limits<double>::quiet_NaN();
    };
    add("bigram perplexity (train)", ppl(init), ppl(fin), !raw,
        raw ? "174.89 vs 165.54" : "153.41 vs 157.76");
    for (const MorphSummary& m : bundle.morph) {
      if (m.init_model == init && m.fin_model == fin) {
        add("morpheme coverage", static_cast<double>(m.coverage_init),
            static_cast<double>(m.coverage_fin), true,
            raw ? "5170 vs 6049" : "5391 vs 5537");
        if (m.regression) {
          const OlsResult& ols = m.regression->ols;
          TrendRow r;
          r.measure = "agreement coefficient";
          r.label_a = "beta(" + m.pretok + ")";
          r.label_b = "0";
          r.expected = "a>b";
          r.reference = "0.95";
          r.value_a = ols.coefficients[ols.index("agreement")];
          r.value_b = 0.0;
          r.same_direction = r.value_a > 0.0;
          rows.push_back(std::move(r));
        }
      }
    }
  }
  return rows;
}

}  // namespace

std::string Condition::name() const {
  return pretok_label(pretok) +
         (scheme == MarkingScheme::kInit ? "Init" : "Fin");
}

std::vector<Condition> default_conditions() {
  return {{MarkingScheme::kInit, PretokMode::kRaw},
          {MarkingScheme::kFin, PretokMode::kRaw},
          {MarkingScheme::kInit, PretokMode::kRuleBased},
          {MarkingScheme::kFin, PretokMode::kRuleBased}};
}

std::vector<Condition> parse_conditions(std::string_view text) {
  std::vector<Condition> out;
  while (!text.empty()) {
    const size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{}
                                           : text.substr(comma + 1);
    if (item.empty()) continue;
    const size_t colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw UsageError("condition '" + std::string(item) +
                       "' must look like pretok:scheme");
    }
    Condition c{parse_marking_scheme(trim(item.substr(colon + 1))),
                parse_pretok_mode(trim(item.substr(0, colon)))};
    if (std::find(out.begin(), out.end(), c) != out.end()) {
      throw UsageError("duplicate condition '" + std::string(item) + "'");
    }
    out.push_back(c);
  }
  if (out.empty()) throw UsageError("no conditions given");
  return out;
}

void ExperimentConfig::set(std::string_view key, std::string_view value,
                           const std::filesystem::path& base_dir) {
  value = trim(value);
  if (key == "train") {
    train_corpus = resolve(base_dir, value);
  } else if (key == "indomain") {
    indomain_corpus = resolve(base_dir, value);
  } else if (key == "ood") {
    ood_corpus = resolve(base_dir, value);
  } else if (key == "lexicon") {
    if (value.empty()) {
      lexicon.reset();
    } else {
      lexicon = resolve(base_dir, value);
    }
  } else if (key == "conditions") {
    conditions = parse_conditions(value);
  } else if (key == "vocab_size") {
    trainer.target_vocab_size = parse_number<size_t>(key, value);
  } else if (key == "shrink") {
    trainer.shrink_factor = parse_number<double>(key, value);
  } else if (key == "seed_max_len") {
    trainer.seed_max_piece_len = parse_number<size_t>(key, value);
  } else if (key == "seed_min_count") {
    trainer.seed_min_count = parse_number<uint64_t>(key, value);
  } else if (key == "seed_max_size") {
    trainer.seed_max_size = parse_number<size_t>(key, value);
  } else if (key == "em_iters") {
    trainer.em_iters_per_round = parse_number<int>(key, value);
  } else if (key == "final_em_iters") {
    trainer.final_em_max_iters = parse_number<int>(key, value);
  } else if (key == "threads") {
    trainer.threads = parse_number<int>(key, value);
  } else if (key == "meta") {
    try {
      trainer.meta_symbol = unicode::from_hex(value);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  } else if (key == "epsilon") {
    epsilon = parse_number<double>(key, value);
  } else if (key == "fold_case") {
    fold_case = parse_bool(key, value);
  } else {
    throw UsageError("unknown configuration key '" + std::string(key) + "'");
  }
}

void ExperimentConfig::validate() const {
  trainer.validate();
  if (conditions.empty()) throw UsageError("no conditions given");
  if (train_corpus.empty() || indomain_corpus.empty() || ood_corpus.empty()) {
    throw UsageError("train, indomain and ood corpora must all be set");
  }
  if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::string conds;
  for (const Condition& c : conditions) {
    if (!conds.empty()) conds += ',';
    conds += std::string(to_string(c.pretok)) + ":" +
             std::string(to_string(c.scheme));
  }
  std::vector<std::pair<std::string, std::string>> out = {
      {"conditions", conds},
      {"em_iters", std::to_string(trainer.em_iters_per_round)},
      {"epsilon", format_score(epsilon)},
      {"final_em_iters", std::to_string(trainer.final_em_max_iters)},
      {"final_em_tolerance", format_score(trainer.final_em_tolerance)},
      {"fold_case", fold_case ? "true" : "false"},
      {"indomain", indomain_corpus.string()},
      {"lexicon", lexicon ? lexicon->string() : ""},
      {"meta", unicode::to_hex(trainer.meta_symbol)},
      {"ood", ood_corpus.string()},
      {"seed_max_len", std::to_string(trainer.seed_max_piece_len)},
      {"seed_max_size", std::to_string(trainer.effective_seed_max_size())},
      {"seed_min_count", std::to_string(trainer.seed_min_count)},
      {"shrink", format_score(trainer.shrink_factor)},
      {"threads", std::to_string(trainer.threads)},
      {"train", train_corpus.string()},
      {"vocab_size", std::to_string(trainer.target_vocab_size)},
  };
  return out;
}

ExperimentConfig parse_experiment_config(std::istream& in,
                                         const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s(line);
    if (const size_t hash = s.find('#'); hash != std::string_view::npos) {
      s = s.substr(0, hash);
    }
    s = trim(s);
    if (s.empty()) continue;
    const size_t eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    try {
      config.set(trim(s.substr(0, eq)), s.substr(eq + 1), base_dir);
    } catch (const UsageError& e) {
      throw UsageError("config line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path.string() + "'");
  return parse_experiment_config(in, path.parent_path());
}

const StatsReport* ReportBundle::cell(std::string_view model,
                                      std::string_view corpus) const {
  for (const StatsReport& r : cells) {
    if (r.model_id == model && r.corpus_id == corpus) return &r;
  }
  return nullptr;
}

const ConditionSummary* ReportBundle::condition(std::string_view name) const {
  for (const ConditionSummary& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ReportBundle run_experiment(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir,
                            std::ostream* log) {
  config.validate();
  std::filesystem::create_directories(out_dir);
  const auto say = [&](const std::string& msg) {
    if (log != nullptr) *log << msg << std::endl;
  };

  const std::vector<std::pair<std::string, std::filesystem::path>> sources = {
      {std::string(kTrainCorpus), config.train_corpus},
      {std::string(kInDomainCorpus), config.indomain_corpus},
      {std::string(kOutOfDomainCorpus), config.ood_corpus}};
  std::vector<std::vector<std::string>> corpora;
  for (const auto& [id, path] : sources) {
    corpora.push_back(stage("read", id, [&] { return read_lines(path); }));
    if (corpora.back().empty()) {
      throw DataError("read [" + id + "]: corpus '" + path.string() + "' is empty");
    }
  }
  std::optional<MorphLexicon> lexicon;
  if (config.lexicon) {
    lexicon = stage("lexicon", "-", [&] {
      return load_lexicon(*config.lexicon, config.fold_case);
    });
  }

  ReportBundle bundle;
  bundle.config = config.echo();
  bundle.metadata = {
      {"entropy_units", "bits (log base 2 assumed for all entropies)"},
      {"piece_score_units", "natural-log probabilities"},
      {"seed_min_count",
       std::to_string(config.trainer.seed_min_count) +
           " (seeding frequency threshold; default 2)"},
      {"tokens_per_word_denominator",
       "whitespace-delimited words of the text the tokenizer consumed "
       "(raw text for raw mode, pretokenized text otherwise)"},
      {"bigram_framing",
       "<s> and </s> added to every line; pieces unseen in training share "
       "one unknown type; V = observed types + 3"},
      {"perplexity_normalization", "per piece token, including </s>"},
      {"regression",
       "OLS with intercept; predictors: agreement (0-2), model_fin (0/1); "
       "one row per piece per model"},
      {"bare_string_ties",
       "pieces sharing a bare string within one model contribute their "
       "highest score"},
      {"rules_pretokenizer",
       "rule-based punctuation splitter used for the pretokenized "
       "conditions"},
  };

  std::vector<std::pair<Condition, Vocabulary>> vocabs;
  std::string lengths_tsv = "model\tlength\tcount\n";
  for (const Condition& cond : config.conditions) {
    const std::string name = cond.name();
    TrainerConfig tc = config.trainer;
    tc.scheme = cond.scheme;
    tc.pretok = cond.pretok;
    say("training " + name);
    Vocabulary vocab =
        stage("train", name, [&] { return train(corpora[0], tc); });
    save_vocab(vocab, out_dir / (name + ".vocab"));

    ConditionSummary summary;
    summary.name = name;
    summary.scheme = std::string(to_string(cond.scheme));
    summary.pretok = std::string(to_string(cond.pretok));
    summary.vocab_size = vocab.size();
    summary.type_entropy_bits = type_entropy(vocab);
    summary.probability_mass = vocab.probability_mass();
    summary.lengths = length_histogram(vocab);
    for (const auto& [len, count] : summary.lengths.counts) {
      lengths_tsv += name + "\t" + std::to_string(len) + "\t" +
                     std::to_string(count) + "\n";
    }

    std::vector<EncodedCorpus> encoded;
    for (size_t i = 0; i < corpora.size(); ++i) {
      say("encoding " + sources[i].first + " with " + name);
      encoded.push_back(stage("encode", name, [&] {
        return encode_corpus(corpora[i], vocab, cond.pretok);
      }));
      write_token_file(out_dir / (name + "." + sources[i].first + ".tok"),
                       encoded.back().lines);
    }
    const BigramModel lm = stage("bigram", name, [&] {
      return BigramModel::fit(encoded[0].lines, config.epsilon);
    });
    summary.bigram_types = lm.vocab_size();
    for (size_t i = 0; i < corpora.size(); ++i) {
      StatsReport r = stage("stats", name, [&] {
        return compute_stats(name, sources[i].first, encoded[i], vocab);
      });
      r.perplexity = stage("ppl", name,
                           [&] { return perplexity(lm, encoded[i].lines); });
      bundle.cells.push_back(std::move(r));
    }
    bundle.conditions.push_back(std::move(summary));
    vocabs.emplace_back(cond, std::move(vocab));
  }

  if (lexicon) {
    for (PretokMode mode :
         {PretokMode::kRaw, PretokMode::kRuleBased, PretokMode::kExternal}) {
      const Vocabulary* init = nullptr;
      const Vocabulary* fin = nullptr;
      for (const auto& [cond, vocab] : vocabs) {
        if (cond.pretok != mode) continue;
        (cond.scheme == MarkingScheme::kInit ? init : fin) = &vocab;
      }
      if (init == nullptr || fin == nullptr) continue;
      MorphSummary m;
      m.pretok = std::string(to_string(mode));
      m.init_model = Condition{MarkingScheme::kInit, mode}.name();
      m.fin_model = Condition{MarkingScheme::kFin, mode}.name();
      say("morphology " + m.init_model + " vs " + m.fin_model);
      m.lexicon_size = lexicon->size();
      m.coverage_init = coverage(*init, *lexicon).count;
      m.coverage_fin = coverage(*fin, *lexicon).count;
      m.union_count = union_coverage(*init, *fin, *lexicon);
      const auto exclusive = exclusive_matches(*init, *fin, *lexicon);
      m.only_init = exclusive.only_a.size();
      m.only_fin = exclusive.only_b.size();
      for (const auto& e : exclusive.only_a) {
        if (e.positions.contains(PositionClass::kWordInitial)) {
          ++m.only_init_word_initial;
        }
      }
      for (const auto& e : exclusive.only_b) {
        if (!e.positions.contains(PositionClass::kWordInitial)) {
          ++m.only_fin_non_initial;
        }
      }
      const auto records = build_agreement_table(*init, *fin, *lexicon);
      m.records = records.size();
      try {
        m.regression = regress_agreement(records);
      } catch (const DataError& e) {
        m.regression_error = e.what();
        bundle.warnings.push_back("regression " + m.pretok + ": " + e.what());
      }
      std::ostringstream scores;
      export_score_distributions(records, scores);
      write_text(out_dir / ("scores_" + m.pretok + ".tsv"), scores.str());
      bundle.morph.push_back(std::move(m));
    }
  }

  bundle.trends = build_trends(bundle);
  write_text(out_dir / "lengths.tsv", lengths_tsv);
  write_text(out_dir / "table.tsv", render_table_tsv(bundle));
  write_text(out_dir / "report.json", to_json(bundle).dump(2) + "\n");
  write_text(out_dir / "report.txt", render_report(bundle));
  return bundle;
}

std::string render_table_tsv(const ReportBundle& bundle) {
  std::string out =
      "model\tcorpus\ttokens_per_word\tcorpus_entropy_bits\ttype_entropy_bits\t"
      "perplexity\tword_count\tpiece_count\tdistinct_pieces\n";
  for (const StatsReport& r : bundle.cells) {
    out += r.model_id + "\t" + r.corpus_id + "\t" +
           format_score(r.tokens_per_word) + "\t" +
           format_score(r.corpus_entropy_bits) + "\t" +
           format_score(r.type_entropy_bits) + "\t" +
           (r.perplexity ? format_score(*r.perplexity) : "") + "\t" +
           std::to_string(r.word_count) + "\t" + std::to_string(r.piece_count) +
           "\t" + std::to_string(r.distinct_pieces) + "\n";
  }
  return out;
}

std::string render_report(const ReportBundle& bundle) {
  constexpr size_t kModelWidth = 10;
  constexpr size_t kNumWidth = 9;
  const std::vector<std::pair<std::string_view, std::string>> groups = {
      {kTrainCorpus, "Training corpus"},
      {kInDomainCorpus, "In-domain corpus"},
      {kOutOfDomainCorpus, "Out-of-domain corpus"}};
  const std::string dash = pad_left("\u2014", kNumWidth);
  std::vector<std::string> warnings = bundle.warnings;

  std::string out = "Corpus-level measures\n\n";
  std::string h1 = pad_right("", kModelWidth) + pad_left("", kNumWidth);
  std::string h2 = pad_right("Model", kModelWidth) + pad_left("Type H", kNumWidth);
  for (const auto& [id, title] : groups) {
    h1 += " | " + pad_right(title, 3 * kNumWidth);
    h2 += " | " + pad_left("Toks/word", kNumWidth) +
          pad_left("Entropy", kNumWidth) + pad_left("Ppl.", kNumWidth);
  }
  h1.erase(h1.find_last_not_of(' ') + 1);
  out += h1 + "\n" + h2 + "\n";
  out += std::string(unicode::codepoint_length(h2), '-') + "\n";
  for (const ConditionSummary& c : bundle.conditions) {
    std::string row = pad_right(c.name, kModelWidth) +
                      pad_left(fixed(c.type_entropy_bits, 3), kNumWidth);
    for (const auto& [id, title] : groups) {
      row += " | ";
      const StatsReport* r = bundle.cell(c.name, id);
      if (r == nullptr) {
        row += dash + dash + dash;
        warnings.push_back("missing cell " + c.name + "/" + std::string(id));
        continue;
      }
      row += pad_left(fixed(r->tokens_per_word, 3), kNumWidth) +
             pad_left(fixed(r->corpus_entropy_bits, 3), kNumWidth);
      if (r->perplexity) {
        row += pad_left(fixed(*r->perplexity, 2), kNumWidth);
      } else {
        row += dash;
        warnings.push_back("missing perplexity " + c.name + "/" +
                           std::string(id));
      }
    }
    out += row + "\n";
  }

  if (!bundle.morph.empty()) {
    out += "\nMorpheme coverage\n\n";
    for (const MorphSummary& m : bundle.morph) {
      const auto pct = [&](size_t n) {
        return fixed(100.0 * static_cast<double>(n) /
                         static_cast<double>(std::max<size_t>(m.lexicon_size, 1)),
                     1) +
               "%";
      };
      out += m.init_model + " " + std::to_string(m.coverage_init) + " (" +
             pct(m.coverage_init) + "), " + m.fin_model + " " +
             std::to_string(m.coverage_fin) + " (" + pct(m.coverage_fin) +
             "), union " + std::to_string(m.union_count) + " (" +
             pct(m.union_count) + ") of " + std::to_string(m.lexicon_size) +
             "\n";
      out += "  only " + m.init_model + ": " + std::to_string(m.only_init) +
             " (" + std::to_string(m.only_init_word_initial) +
             " word-initial); only " + m.fin_model + ": " +
             std::to_string(m.only_fin) + " (" +
             std::to_string(m.only_fin_non_initial) + " non-initial)\n";
      if (m.regression) {
        const OlsResult& ols = m.regression->ols;
        const size_t a = ols.index("agreement");
        out += "  regression: beta(agreement) = " +
               fixed(ols.coefficients[a], 3) + ", t = " +
               fixed(ols.t_stats[a], 2) + ", p = " +
               fixed(ols.p_values[a], 4) + ", n = " + std::to_string(ols.n) +
               "\n  mean log-prob by agreement:";
        for (auto it = m.regression->group_means.rbegin();
             it != m.regression->group_means.rend(); ++it) {
          out += " " + std::to_string(it->first) + ": " + fixed(it->second, 2);
        }
        out += "\n";
      }
    }
  }

  if (!bundle.trends.empty()) {
    out += "\nDirectional trends (informational, not asserted)\n\n";
    for (const TrendRow& t : bundle.trends) {
      const std::string op = t.expected == "a<b" ? " < " : " > ";
      const int decimals = t.measure == "morpheme coverage" ? 0 : 3;
      out += pad_right(t.measure, 28) + pad_right(t.label_a + op + t.label_b, 22) +
             "reference " + pad_right(t.reference, 18) + "observed " +
             fixed(t.value_a, decimals) +
             (t.label_b == "0" ? "" : " vs " + fixed(t.value_b, decimals)) +
             (t.same_direction ? "  same direction" : "  opposite") + "\n";
    }
  }

  if (!warnings.empty()) {
    out += "\nWarnings\n";
    for (const std::string& w : warnings) out += "  " + w + "\n";
  }
  return out;
}

json to_json(const StatsReport& r) {
  return json{{"model_id", r.model_id},
              {"corpus_id", r.corpus_id},
              {"word_count", r.word_count},
              {"piece_count", r.piece_count},
              {"distinct_pieces", r.distinct_pieces},
              {"tokens_per_word", number(r.tokens_per_word)},
              {"corpus_entropy_bits", number(r.corpus_entropy_bits)},
              {"type_entropy_bits", number(r.type_entropy_bits)},
              {"perplexity", r.perplexity ? number(*r.perplexity) : json(nullptr)}};
}

json to_json(const AgreementRegression& reg) {
  json preds = json::object();
  const OlsResult& o = reg.ols;
  for (size_t j = 0; j < o.predictors.size(); ++j) {
    preds[o.predictors[j]] = {{"beta", number(o.coefficients[j])},
                              {"std_error", number(o.std_errors[j])},
                              {"t", number(o.t_stats[j])},
                              {"p", number(o.p_values[j])}};
  }
  json means = json::object();
  for (const auto& [level, mean] : reg.group_means) {
    means[std::to_string(level)] = {{"mean", number(mean)},
                                    {"n", reg.group_sizes.at(level)}};
  }
  return json{{"n", o.n},
              {"dof", o.dof},
              {"r_squared", number(o.r_squared)},
              {"degenerate", o.degenerate},
              {"predictors", preds},
              {"group_means", means}};
}

json to_json(const ReportBundle& b) {
  json j;
  json config = json::object();
  for (const auto& [k, v] : b.config) config[k] = v;
  j["config"] = config;
  json meta = json::object();
  for (const auto& [k, v] : b.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["conditions"] = json::array();
  for (const ConditionSummary& c : b.conditions) {
    json lengths = json::object();
    for (const auto& [len, count] : c.lengths.counts) {
      lengths[std::to_string(len)] = count;
    }
    j["conditions"].push_back(
        {{"name", c.name},
         {"scheme", c.scheme},
         {"pretok", c.pretok},
         {"vocab_size", c.vocab_size},
         {"type_entropy_bits", number(c.type_entropy_bits)},
         {"probability_mass", number(c.probability_mass)},
         {"bigram_types", c.bigram_types},
         {"length_histogram", lengths},
         {"mean_length",
          c.lengths.mean ? number(*c.lengths.mean) : json(nullptr)}});
  }
  j["cells"] = json::array();
  for (const StatsReport& r : b.cells) j["cells"].push_back(to_json(r));
  j["morph"] = json::array();
  for (const MorphSummary& m : b.morph) {
    json mj = {{"pretok", m.pretok},
               {"init_model", m.init_model},
               {"fin_model", m.fin_model},
               {"lexicon_size", m.lexicon_size},
               {"coverage_init", m.coverage_init},
               {"coverage_fin", m.coverage_fin},
               {"union", m.union_count},
               {"only_init", m.only_init},
               {"only_init_word_initial", m.only_init_word_initial},
               {"only_fin", m.only_fin},
               {"only_fin_non_initial", m.only_fin_non_initial},
               {"records", m.records}};
    mj["regression"] = m.regression ? to_json(*m.regression) : json(nullptr);
    if (!m.regression_error.empty()) mj["regression_error"] = m.regression_error;
    j["morph"].push_back(mj);
  }
  j["trends"] = json::array();
  for (const TrendRow& t : b.trends) {
    j["trends"].push_back({{"measure", t.measure},
                           {"a", t.label_a},
                           {"b", t.label_b},
                           {"expected", t.expected},
                           {"reference", t.reference},
                           {"value_a", number(t.value_a)},
                           {"value_b", number(t.value_b)},
                           {"same_direction", t.same_direction}});
  }
  j["warnings"] = b.warnings;
  return j;
}

ReportBundle bundle_from_json(const json& j) {
  ReportBundle b;
  try {
    for (const auto& [k, v] : j.at("config").items()) {
      b.config.emplace_back(k, v.get<std::string>());
    }
    for (const auto& [k, v] : j.at("metadata").items()) {
      b.metadata.emplace_back(k, v.get<std::string>());
    }
    for (const json& c : j.at("conditions")) {
      ConditionSummary s;
      s.name = c.at("name").get<std::string>();
      s.scheme = c.at("scheme").get<std::string>();
      s.pretok = c.at("pretok").get<std::string>();
      s.vocab_size = c.at("vocab_size").get<size_t>();
      s.type_entropy_bits = number_from(c.at("type_entropy_bits"));
      s.probability_mass = number_from(c.at("probability_mass"));
      s.bigram_types = c.at("bigram_types").get<uint64_t>();
      for (const auto& [len, count] : c.at("length_histogram").items()) {
        s.lengths.counts[std::stoul(len)] = count.get<size_t>();
        s.lengths.total += count.get<size_t>();
      }
      if (!c.at("mean_length").is_null()) {
        s.lengths.mean = c.at("mean_length").get<double>();
      }
      b.conditions.push_back(std::move(s));
    }
    for (const json& c : j.at("cells")) {
      StatsReport r;
      r.model_id = c.at("model_id").get<std::string>();
      r.corpus_id = c.at("corpus_id").get<std::string>();
      r.word_count = c.at("word_count").get<uint64_t>();
      r.piece_count = c.at("piece_count").get<uint64_t>();
      r.distinct_pieces = c.at("distinct_pieces").get<uint64_t>();
      r.tokens_per_word = number_from(c.at("tokens_per_word"));
      r.corpus_entropy_bits = number_from(c.at("corpus_entropy_bits"));
      r.type_entropy_bits = number_from(c.at("type_entropy_bits"));
      if (!c.at("perplexity").is_null()) {
        r.perplexity = c.at("perplexity").get<double>();
      }
      b.cells.push_back(std::move(r));
    }
    for (const json& mj : j.at("morph")) {
      MorphSummary m;
      m.pretok = mj.at("pretok").get<std::string>();
      m.init_model = mj.at("init_model").get<std::string>();
      m.fin_model = mj.at("fin_model").get<std::string>();
      m.lexicon_size = mj.at("lexicon_size").get<size_t>();
      m.coverage_init = mj.at("coverage_init").get<size_t>();
      m.coverage_fin = mj.at("coverage_fin").get<size_t>();
      m.union_count = mj.at("union").get<size_t>();
      m.only_init = mj.at("only_init").get<size_t>();
      m.only_init_word_initial = mj.at("only_init_word_initial").get<size_t>();
      m.only_fin = mj.at("only_fin").get<size_t>();
      m.only_fin_non_initial = mj.at("only_fin_non_initial").get<size_t>();
      m.records = mj.at("records").get<size_t>();
      if (const json& rj = mj.at("regression"); !rj.is_null()) {
        AgreementRegression reg;
        reg.ols.n = rj.at("n").get<size_t>();
        reg.ols.dof = rj.at("dof").get<size_t>();
        reg.ols.r_squared = number_from(rj.at("r_squared"));
        reg.ols.degenerate = rj.at("degenerate").get<bool>();
        for (const std::string name : {"intercept", "agreement", "model_fin"}) {
          const json& p = rj.at("predictors").at(name);
          reg.ols.predictors.push_back(name);
          reg.ols.coefficients.push_back(number_from(p.at("beta")));
          reg.ols.std_errors.push_back(number_from(p.at("std_error")));
          reg.ols.t_stats.push_back(number_from(p.at("t")));
          reg.ols.p_values.push_back(number_from(p.at("p")));
        }
        for (const auto& [level, g] : rj.at("group_means").items()) {
          reg.group_means[std::stoi(level)] = number_from(g.at("mean"));
          reg.group_sizes[std::stoi(level)] = g.at("n").get<size_t>();
        }
        m.regression = std::move(reg);
      }
      if (mj.contains("regression_error")) {
        m.regression_error = mj.at("regression_error").get<std::string>();
      }
      b.morph.push_back(std::move(m));
    }
    for (const json& t : j.at("trends")) {
      TrendRow r;
      r.measure = t.at("measure").get<std::string>();
      r.label_a = t.at("a").get<std::string>();
      r.label_b = t.at("b").get<std::string>();
      r.expected = t.at("expected").get<std::string>();
      r.reference = t.at("reference").get<std::string>();
      r.value_a = number_from(t.at("value_a"));
      r.value_b = number_from(t.at("value_b"));
      r.same_direction = t.at("same_direction").get<bool>();
      b.trends.push_back(std::move(r));
    }
    b.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report bundle: ") + e.what());
  }
  return b;
}

}  // namespace boundkit
