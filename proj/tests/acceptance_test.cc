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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "boundkit/bigram_lm.h"
#include "boundkit/corpus_stats.h"
#include "boundkit/experiment.h"
#include "boundkit/io.h"
#include "boundkit/morph_eval.h"
#include "boundkit/ols.h"
#include "boundkit/pretokenizer.h"
#include "boundkit/segmenter.h"
#include "boundkit/trainer.h"
#include "boundkit/unicode.h"
#include "json.hpp"
#include "oracles.h"

namespace fs = std::filesystem;
using namespace boundkit;
using nlohmann::json;

namespace {

const fs::path kData = BOUNDKIT_DATA_DIR;
const std::string kCli = BOUNDKIT_CLI;
constexpr size_t kVocabSize = 4000;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s  %2d  %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void note(const std::string& text) {
  std::printf("      %s\n", text.c_str());
  std::fflush(stdout);
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

int cli(const std::string& args) {
  const std::string cmd = quote(kCli) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

std::string joined(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

// --- 1 -------------------------------------------------------------------
void round_trip(const std::vector<Vocabulary>& vocabs) {
  std::mt19937_64 rng(101);
  std::vector<std::string> lines;
  for (int i = 0; i < 1000; ++i) lines.push_back(oracle::random_line(rng));
  const auto corpus = read_lines(kData / "ood.txt");
  const auto indomain = read_lines(kData / "indomain.txt");
  for (size_t i = 0; i < 500; ++i) {
    lines.push_back(corpus[i]);
    lines.push_back(indomain[i]);
  }
  size_t checked = 0, mismatches = 0;
  std::string first;
  for (const Vocabulary& v : vocabs) {
    for (PretokMode mode :
         {PretokMode::kRaw, PretokMode::kRuleBased, PretokMode::kExternal}) {
      Encoder enc(v);
      for (const auto& line : lines) {
        const auto pieces = enc.encode_line(line, mode);
        const std::string back = decode(pieces, v.scheme(), v.meta_symbol());
        ++checked;
        if (back != joined(pretokenize(line, mode))) {
          if (mismatches++ == 0) first = line;
        }
      }
    }
  }
  report(1, "round-trip exactness", mismatches == 0,
         std::to_string(mismatches) + " mismatches over " +
             std::to_string(checked) +
             " encodings (1000 random + 1000 corpus lines, 2 schemes, 3 modes)" +
             (first.empty() ? "" : "; first: " + first));
}

// --- 2 -------------------------------------------------------------------
void viterbi_vs_brute_force() {
  std::mt19937_64 rng(202);
  const std::u32string alphabet = U"▁abcdé";
  std::map<std::u32string, double> pieces;
  while (pieces.size() < 50) {
    std::u32string s;
    const size_t len = 1 + rng() % 4;
    for (size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    // Few distinct scores, so tied optima are common.
    pieces[s] = -0.5 * static_cast<double>(1 + rng() % 6);
  }
  std::vector<Piece> list;
  for (const auto& [s, score] : pieces) list.push_back({unicode::encode_utf8(s), score});
  const Vocabulary v(list, MarkingScheme::kInit);
  size_t mismatches = 0, ties = 0;
  for (int w = 0; w < 200; ++w) {
    std::u32string word = U"▁";
    const size_t len = 1 + rng() % 11;
    for (size_t i = 0; i < len; ++i) word += U"abcdéz"[rng() % 6];
    const auto want = oracle::best_segmentation(word, pieces, v.effective_unk_score());
    const Lattice lattice = build_lattice(unicode::encode_utf8(word), v);
    const Segmentation seg = viterbi(lattice);
    const auto got = segment_surfaces(lattice, seg);
    if (got != want.pieces || seg.score != want.score) ++mismatches;
    // Count words whose optimum is shared by another segmentation.
    std::set<std::u32string> keys;
    for (const auto& [s, p] : pieces) keys.insert(s);
    size_t best = 0;
    for (const auto& path : oracle::all_segmentations(word, keys)) {
      double score = 0;
      for (const auto& p : path) score += pieces.at(p);
      best += score == want.score;
    }
    ties += best > 1;
  }
  report(2, "viterbi vs exhaustive search", mismatches == 0,
         std::to_string(mismatches) + " mismatches over 200 words (<= 12 code "
         "points, 50-piece vocabulary, " + std::to_string(ties) +
         " with tied optima)");
}

// --- 3 -------------------------------------------------------------------
void reversal_duality(const Vocabulary& fin, TrainTrace* trace) {
  std::vector<std::string> reversed;
  for (const auto& line : read_lines(kData / "train.txt")) {
    std::vector<std::string> words;
    for (const auto& w : pretokenize(line, PretokMode::kRaw)) {
      words.push_back(unicode::reversed_utf8(w));
    }
    reversed.push_back(joined(words));
  }
  TrainerConfig c;
  c.target_vocab_size = kVocabSize;
  c.scheme = MarkingScheme::kInit;
  const Vocabulary init = train(reversed, c, trace);

  size_t missing = 0;
  double max_diff = 0;
  for (const Piece& p : init.pieces()) {
    const Piece* twin = fin.find(unicode::reversed_utf8(p.surface));
    if (twin == nullptr) {
      ++missing;
      continue;
    }
    max_diff = std::max(max_diff, std::abs(twin->score - p.score));
  }
  const bool same_size = init.size() == fin.size();

  size_t enc_mismatch = 0, words = 0;
  Encoder fe(fin), ie(init);
  for (const auto& line : read_lines(kData / "indomain.txt")) {
    for (const auto& w : pretokenize(line, PretokMode::kRaw)) {
      ++words;
      auto mirrored = ie.encode_word(unicode::reversed_utf8(w));
      std::reverse(mirrored.begin(), mirrored.end());
      for (auto& p : mirrored) p = unicode::reversed_utf8(p);
      enc_mismatch += fe.encode_word(w) != mirrored;
    }
  }
  report(3, "reversal duality", same_size && missing == 0 && max_diff <= 1e-9 &&
                                    enc_mismatch == 0,
         std::to_string(fin.size()) + " pieces, " + std::to_string(missing) +
             " unmatched, max |score diff| " + fmt("%.3g", max_diff) +
             " (tol 1e-9), " + std::to_string(enc_mismatch) + "/" +
             std::to_string(words) + " word encodings differ");
}

// --- 4, 5 ----------------------------------------------------------------
void em_and_mass(const std::vector<TrainTrace>& traces,
                 const std::vector<Vocabulary>& vocabs) {
  double worst_drop = 0;
  size_t steps = 0;
  double worst_mass = 0;
  size_t prunes = 0;
  for (const TrainTrace& t : traces) {
    for (const auto& round : t.rounds) {
      for (size_t i = 1; i < round.log_likelihoods.size(); ++i) {
        const double prev = round.log_likelihoods[i - 1];
        const double drop = (prev - round.log_likelihoods[i]) / std::abs(prev);
        worst_drop = std::max(worst_drop, drop);
        ++steps;
      }
      for (double m : round.masses) worst_mass = std::max(worst_mass, std::abs(m - 1));
      if (round.size_after_prune > 0) {
        worst_mass = std::max(worst_mass, std::abs(round.mass_after_prune - 1));
        ++prunes;
      }
    }
    // The closing refinement runs at a fixed size too.
    const auto& fin = t.final_log_likelihoods;
    for (size_t i = 1; i < fin.size(); ++i) {
      worst_drop = std::max(worst_drop, (fin[i - 1] - fin[i]) / std::abs(fin[i - 1]));
      ++steps;
    }
    worst_mass = std::max(worst_mass, std::abs(t.final_mass - 1));
  }
  for (const Vocabulary& v : vocabs) {
    worst_mass = std::max(worst_mass, std::abs(v.probability_mass() - 1));
  }
  report(4, "EM monotonicity", worst_drop <= 1e-6,
         "largest relative log-likelihood drop " + fmt("%.3g", worst_drop) +
             " over " + std::to_string(steps) +
             " fixed-size EM transitions in two vocab-4000 runs (tol 1e-6)");
  report(5, "probability conservation", worst_mass <= 1e-6,
         "max |mass - 1| " + fmt("%.3g", worst_mass) + " after " +
             std::to_string(prunes) + " prunes, EM steps and " +
             std::to_string(vocabs.size()) + " final vocabularies (tol 1e-6)");
}

// --- 6 -------------------------------------------------------------------
void entropy_oracles() {
  double worst = 0;
  for (size_t n : {2u, 16u, 1024u}) {
    std::vector<Piece> pieces;
    for (size_t i = 0; i < n; ++i) {
      pieces.push_back({"p" + std::to_string(i), -std::log(static_cast<double>(n))});
    }
    const double h = type_entropy(Vocabulary(pieces, MarkingScheme::kInit));
    worst = std::max(worst, std::abs(h - std::log2(static_cast<double>(n))));
  }
  TokenCounts counts;
  counts.add("x", 3);
  counts.add("y", 1);
  const double h31 = corpus_entropy(counts);
  const bool ok = worst <= 1e-9 && std::abs(h31 - 0.811278) <= 1e-6;
  report(6, "entropy oracles", ok,
         "uniform N in {2,16,1024}: max error " + fmt("%.3g", worst) +
             " (tol 1e-9); H{3,1} = " + fmt("%.7f", h31) + " (want 0.811278 +- 1e-6)");
}

// --- 7 -------------------------------------------------------------------
void bigram_limits() {
  using Lines = std::vector<std::vector<std::string>>;
  Lines corpus;
  std::mt19937_64 rng(707);
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> line;
    for (int k = 0; k < 6; ++k) line.push_back("t" + std::to_string(rng() % 7));
    corpus.push_back(line);
  }
  const BigramModel m = BigramModel::fit(corpus);
  double worst = 0;
  for (uint32_t c = 0; c < m.vocab_size(); ++c) {
    double sum = 0;
    for (uint32_t n = 0; n < m.vocab_size(); ++n) sum += m.probability(c, n);
    worst = std::max(worst, std::abs(sum - 1));
  }
  const double det =
      perplexity(BigramModel::fit(Lines(100, {"a"}), 1e-9), Lines{{"a"}});
  const BigramModel small = BigramModel::fit(Lines{{"a", "b"}});
  const double v = static_cast<double>(small.vocab_size());
  const double unseen =
      perplexity(small, Lines{std::vector<std::string>(10000, "q")});
  const bool ok = m.vocab_size() == 10 && worst <= 1e-9 && det <= 1.001 &&
                  std::abs(unseen - v) / v <= 0.01;
  report(7, "bigram normalization and limits", ok,
         "V=" + std::to_string(m.vocab_size()) + " max |sum - 1| " +
             fmt("%.3g", worst) + " (tol 1e-9); deterministic ppl " +
             fmt("%.6f", det) + " (<= 1.001); unseen-context ppl " +
             fmt("%.4f", unseen) + " vs V=" + fmt("%.0f", v) + " (1%)");
}

// --- 8 -------------------------------------------------------------------
void perplexity_dominance(const ReportBundle& b) {
  bool ok = b.conditions.size() == 4;
  std::string detail;
  for (const auto& c : b.conditions) {
    const StatsReport* r = b.cell(c.name, kTrainCorpus);
    const bool good = r != nullptr && r->perplexity &&
                      *r->perplexity < static_cast<double>(c.bigram_types);
    ok = ok && good;
    if (!detail.empty()) detail += "; ";
    detail += c.name + " " + (r && r->perplexity ? fmt("%.2f", *r->perplexity) : "?") +
              " < V=" + std::to_string(c.bigram_types);
  }
  report(8, "perplexity dominance (train)", ok, detail);
}

// --- 9 -------------------------------------------------------------------
void coverage_oracle(const std::map<std::string, Vocabulary>& vocabs,
                     const MorphLexicon& lex) {
  const auto lexicon_words = [&] {
    std::vector<std::string> out;
    for (const auto& line : read_lines(kData / "morphemes.txt")) {
      std::string s = line;
      if (s.starts_with('-')) s.erase(0, 1);
      if (s.ends_with('-')) s.pop_back();
      if (!s.empty() && s.find('-') == std::string::npos) out.push_back(s);
    }
    return out;
  }();
  const auto brute = [&](const Vocabulary& v) {
    std::set<std::string> matched;
    const std::string mark = "▁";
    for (const auto& w : lexicon_words) {
      for (const Piece& p : v.pieces()) {
        std::string s = p.surface;
        if (v.scheme() == MarkingScheme::kInit && s.starts_with(mark)) {
          s.erase(0, mark.size());
        } else if (v.scheme() == MarkingScheme::kFin && s.ends_with(mark)) {
          s.erase(s.size() - mark.size());
        }
        if (s == w) matched.insert(w);
      }
    }
    return matched;
  };
  size_t comparisons = 0, mismatches = 0;
  for (const std::string pretok : {"Raw", "Rules"}) {
    const Vocabulary& a = vocabs.at(pretok + "Init");
    const Vocabulary& b = vocabs.at(pretok + "Fin");
    const auto ma = brute(a), mb = brute(b);
    mismatches += coverage(a, lex).matched != ma;
    mismatches += coverage(b, lex).matched != mb;
    std::set<std::string> uni = ma, only_a, only_b;
    uni.insert(mb.begin(), mb.end());
    mismatches += union_coverage(a, b, lex) != uni.size();
    for (const auto& w : ma) if (!mb.contains(w)) only_a.insert(w);
    for (const auto& w : mb) if (!ma.contains(w)) only_b.insert(w);
    const auto ex = exclusive_matches(a, b, lex);
    std::set<std::string> ga, gb;
    for (const auto& m : ex.only_a) ga.insert(m.bare);
    for (const auto& m : ex.only_b) gb.insert(m.bare);
    mismatches += ga != only_a;
    mismatches += gb != only_b;
    comparisons += 5;
    note(pretok + ": coverage Init " + std::to_string(ma.size()) + ", Fin " +
         std::to_string(mb.size()) + ", union " + std::to_string(uni.size()) +
         ", only Init " + std::to_string(only_a.size()) + ", only Fin " +
         std::to_string(only_b.size()));
  }
  report(9, "coverage oracle", mismatches == 0,
         std::to_string(mismatches) + " of " + std::to_string(comparisons) +
             " set computations differ from brute force");
}

// --- 10 ------------------------------------------------------------------
void ols_oracle() {
  std::mt19937_64 rng(1010);
  std::normal_distribution<double> g(0.0, 1.0);
  struct Dataset {
    std::string name;
    std::vector<std::string> names;
    std::vector<double> x, y;
  };
  std::vector<Dataset> sets(3);
  sets[0].name = "exact linear";
  sets[0].names = {"intercept", "agreement"};
  for (int i = 0; i < 60; ++i) {
    const double a = i % 3;
    sets[0].x.insert(sets[0].x.end(), {1.0, a});
    sets[0].y.push_back(2 * a + 1);
  }
  sets[1].name = "noiseless two-predictor";
  sets[1].names = {"intercept", "x1", "x2"};
  for (int i = 0; i < 200; ++i) {
    const double x1 = g(rng), x2 = g(rng);
    sets[1].x.insert(sets[1].x.end(), {1.0, x1, x2});
    sets[1].y.push_back(-4.0 + 3 * x1 + 0.5 * x2);
  }
  sets[2].name = "noisy n=10000";
  sets[2].names = {"intercept", "agreement", "model_fin"};
  for (int i = 0; i < 10000; ++i) {
    const double a = static_cast<double>(rng() % 3);
    const double f = static_cast<double>(rng() % 2);
    sets[2].x.insert(sets[2].x.end(), {1.0, a, f});
    sets[2].y.push_back(-11.0 + 0.95 * a - 0.2 * f + 1.5 * g(rng));
  }
  double worst = 0;
  bool t_identity = true;
  for (const auto& d : sets) {
    const OlsResult r = fit_ols(d.names, d.x, d.y);
    const auto want = oracle::normal_equations(d.x, d.y, d.names.size());
    for (size_t j = 0; j < want.size(); ++j) {
      worst = std::max(worst, std::abs(r.coefficients[j] - want[j]));
      if (!r.degenerate) t_identity &= r.t_stats[j] == r.coefficients[j] / r.std_errors[j];
    }
  }
  const double p0 = student_t_two_sided_p(0.0, 1e6);
  const double p196 = student_t_two_sided_p(1.96, 1e6);
  const bool ok = worst <= 1e-8 && t_identity && std::abs(p0 - 1.0) <= 1e-3 &&
                  std::abs(p196 - 0.05) <= 1e-3;
  report(10, "OLS oracle", ok,
         "max |beta - normal equations| " + fmt("%.3g", worst) +
             " (tol 1e-8) over 3 datasets; t = beta/SE " +
             (t_identity ? "exact" : "violated") + "; p(0) = " + fmt("%.6f", p0) +
             ", p(1.96) = " + fmt("%.6f", p196) + " (tol 1e-3)");
}

// --- 11 ------------------------------------------------------------------
void pipeline_shape(const ReportBundle& b) {
  bool ok = b.cells.size() == 12 && b.conditions.size() == 4;
  size_t bad = 0;
  for (const auto& c : b.conditions) {
    const double max_h = std::log2(static_cast<double>(c.vocab_size));
    if (!(c.type_entropy_bits > 0 && c.type_entropy_bits <= max_h)) ++bad;
    for (const char* corpus : {"train", "indomain", "ood"}) {
      const StatsReport* r = b.cell(c.name, corpus);
      if (r == nullptr || !r->perplexity) {
        ++bad;
        continue;
      }
      const double ppl = *r->perplexity;
      const bool cell_ok =
          std::isfinite(r->tokens_per_word) && std::isfinite(r->corpus_entropy_bits) &&
          std::isfinite(ppl) && r->tokens_per_word >= 1 && r->tokens_per_word <= 5 &&
          r->corpus_entropy_bits > 0 && r->corpus_entropy_bits <= max_h &&
          ppl > 1 && ppl < static_cast<double>(c.bigram_types);
      bad += !cell_ok;
    }
  }
  ok = ok && bad == 0;
  report(11, "pipeline shape (4 conditions x 3 corpora)", ok,
         std::to_string(b.cells.size()) + " cells, " + std::to_string(bad) +
             " out of range");
  for (const auto& t : b.trends) {
    const char* decimals = t.measure == "morpheme coverage" ? "%.0f" : "%.3f";
    note("trend (informational) " + t.measure + ": " + t.label_a +
         (t.expected == "a<b" ? " < " : " > ") + t.label_b + " reference " +
         t.reference + ", observed " + fmt(decimals, t.value_a) + " vs " +
         fmt(decimals, t.value_b) + (t.same_direction ? " (same)" : " (opposite)"));
  }
}

void subcommand_composition(const ReportBundle& b, const fs::path& run_dir,
                            const fs::path& scratch) {
  size_t mismatches = 0, checks = 0;
  const std::map<std::string, fs::path> corpora = {
      {"train", kData / "train.txt"},
      {"indomain", kData / "indomain.txt"},
      {"ood", kData / "ood.txt"}};
  for (const auto& c : b.conditions) {
    const fs::path vocab = run_dir / (c.name + ".vocab");
    for (const auto& [id, path] : corpora) {
      const fs::path tok = scratch / (c.name + "." + id + ".tok");
      const fs::path stats = scratch / (c.name + "." + id + ".stats.json");
      int rc = cli("encode --model " + quote(vocab) + " --input " + quote(path) +
                   " --output " + quote(tok) + " --pretok " + c.pretok);
      rc |= cli("stats --model " + quote(vocab) + " --corpus " + quote(path) +
                " --pretok " + c.pretok + " --out " + quote(stats));
      const StatsReport* cell = b.cell(c.name, id);
      ++checks;
      if (rc != 0 || cell == nullptr ||
          slurp(tok) != slurp(run_dir / (c.name + "." + id + ".tok"))) {
        ++mismatches;
        continue;
      }
      const json s = json::parse(slurp(stats));
      if (s["tokens_per_word"].get<double>() != cell->tokens_per_word ||
          s["corpus_entropy_bits"].get<double>() != cell->corpus_entropy_bits ||
          s["type_entropy_bits"].get<double>() != cell->type_entropy_bits) {
        ++mismatches;
      }
    }
    for (const auto& [id, path] : corpora) {
      const fs::path ppl = scratch / (c.name + "." + id + ".ppl.json");
      const int rc = cli("ppl --train-tokens " + quote(scratch / (c.name + ".train.tok")) +
                         " --eval-tokens " + quote(scratch / (c.name + "." + id + ".tok")) +
                         " --out " + quote(ppl));
      ++checks;
      const StatsReport* cell = b.cell(c.name, id);
      if (rc != 0 || cell == nullptr || !cell->perplexity ||
          json::parse(slurp(ppl))["perplexity"].get<double>() != *cell->perplexity) {
        ++mismatches;
      }
    }
  }
  for (const auto& m : b.morph) {
    const fs::path out = scratch / ("morph_" + m.pretok + ".json");
    const int rc = cli("morph --init-model " + quote(run_dir / (m.init_model + ".vocab")) +
                       " --fin-model " + quote(run_dir / (m.fin_model + ".vocab")) +
                       " --lexicon " + quote(kData / "morphemes.txt") + " --out " +
                       quote(out));
    ++checks;
    if (rc != 0) {
      ++mismatches;
      continue;
    }
    const json j = json::parse(slurp(out));
    if (j["coverage_init"]["count"].get<size_t>() != m.coverage_init ||
        j["coverage_fin"]["count"].get<size_t>() != m.coverage_fin ||
        j["union"].get<size_t>() != m.union_count) {
      ++mismatches;
    }
  }
  report(11, "subcommands compose to the orchestrator's numbers", mismatches == 0,
         std::to_string(mismatches) + " of " + std::to_string(checks) +
             " encode/stats/ppl/morph checks differ (exact equality)");
}

// --- 12 ------------------------------------------------------------------
void determinism(const fs::path& a, const fs::path& b) {
  size_t files = 0, differ = 0;
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.insert(e.path().filename());
  for (const auto& e : fs::directory_iterator(b)) names.insert(e.path().filename());
  for (const auto& n : names) {
    ++files;
    if (!fs::exists(a / n) || !fs::exists(b / n) || slurp(a / n) != slurp(b / n)) {
      ++differ;
    }
  }
  report(12, "determinism", differ == 0 && files > 0,
         std::to_string(differ) + " of " + std::to_string(files) +
             " output files differ between two serial runs");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path scratch = fs::temp_directory_path() /
                           ("boundkit_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  fs::create_directories(scratch / "compose");
  const fs::path run_a = scratch / "run_a";
  const fs::path run_b = scratch / "run_b";
  const std::string run_args = "run --quiet --config " +
                               quote(kData / "experiment.conf") +
                               " --set vocab_size=" + std::to_string(kVocabSize) +
                               " --set threads=1 --out-dir ";
  const int rc_a = cli(run_args + quote(run_a));
  const int rc_b = cli(run_args + quote(run_b));
  if (rc_a != 0 || rc_b != 0) {
    report(11, "pipeline run", false,
           "boundkit run exited with " + std::to_string(rc_a) + "/" +
               std::to_string(rc_b));
    return 1;
  }
  const ReportBundle bundle =
      bundle_from_json(json::parse(slurp(run_a / "report.json")));
  std::map<std::string, Vocabulary> vocabs;
  for (const auto& c : bundle.conditions) {
    vocabs.emplace(c.name, load_vocab(run_a / (c.name + ".vocab")));
  }
  std::vector<Vocabulary> all_vocabs;
  for (const auto& [name, v] : vocabs) all_vocabs.push_back(v);

  round_trip({vocabs.at("RawInit"), vocabs.at("RawFin")});
  viterbi_vs_brute_force();

  std::vector<TrainTrace> traces(2);
  reversal_duality(vocabs.at("RawFin"), &traces[0]);
  {
    TrainerConfig c;
    c.target_vocab_size = kVocabSize;
    c.scheme = MarkingScheme::kInit;
    const Vocabulary v = train(read_lines(kData / "train.txt"), c, &traces[1]);
    if (!(v == vocabs.at("RawInit"))) {
      note("in-process RawInit training differs from the CLI run");
    }
  }
  em_and_mass(traces, all_vocabs);
  entropy_oracles();
  bigram_limits();
  perplexity_dominance(bundle);
  coverage_oracle(vocabs, load_lexicon(kData / "morphemes.txt"));
  ols_oracle();
  pipeline_shape(bundle);
  subcommand_composition(bundle, run_a, scratch / "compose");
  determinism(run_a, run_b);

  fs::remove_all(scratch);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
  std::printf("%s: %d failing criteria (%.0f s)\n", failures == 0 ? "OK" : "FAILED",
              failures, secs);
  return failures == 0 ? 0 : 1;
}
