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


// boundkit command-line driver.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boundkit/bigram_lm.h"
#include "boundkit/corpus_stats.h"
#include "boundkit/error.h"
#include "boundkit/experiment.h"
#include "boundkit/io.h"
#include "boundkit/morph_eval.h"
#include "boundkit/segmenter.h"
#include "boundkit/trainer.h"
#include "boundkit/unicode.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace boundkit {
namespace {

struct TrainArgs {
  std::string input;
  std::string model_out;
  size_t vocab_size = 0;
  std::string scheme;
  std::string pretok;
  double shrink = 0.75;
  size_t seed_max_len = 16;
  uint64_t seed_min_count = 2;
  int em_iters = 2;
  int threads = 1;
  std::string meta;
};

struct EncodeArgs {
  std::string model;
  std::string input;
  std::string output;
  std::string pretok = "raw";
};

struct DecodeArgs {
  std::string model;
  std::string input;
  std::string output;
};

struct StatsArgs {
  std::string model;
  std::string corpus;
  std::string pretok = "raw";
  std::string out;
};

struct PplArgs {
  std::string train_tokens;
  std::string eval_tokens;
  double epsilon = kDefaultEpsilon;
  std::string out;
};

struct MorphArgs {
  std::string init_model;
  std::string fin_model;
  std::string lexicon;
  std::string out;
  std::string export_scores;
  bool fold_case = false;
};

struct RunArgs {
  std::string config;
  std::string out_dir;
  std::vector<std::string> overrides;
  bool quiet = false;
};

struct ReportArgs {
  std::string bundle;
  std::string out;
};

void write_json(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

int run_train(const TrainArgs& a) {
  TrainerConfig config;
  config.target_vocab_size = a.vocab_size;
  config.scheme = parse_marking_scheme(a.scheme);
  config.pretok = parse_pretok_mode(a.pretok);
  config.shrink_factor = a.shrink;
  config.seed_max_piece_len = a.seed_max_len;
  config.seed_min_count = a.seed_min_count;
  config.em_iters_per_round = a.em_iters;
  config.threads = a.threads;
  if (!a.meta.empty()) config.meta_symbol = unicode::from_hex(a.meta);
  config.validate();
  const std::vector<std::string> lines = read_lines(a.input);
  TrainTrace trace;
  const Vocabulary vocab = train(lines, config, &trace);
  save_vocab(vocab, a.model_out);
  std::cerr << "seed " << trace.seed_size << ", rounds " << trace.rounds.size()
            << ", final size " << vocab.size() << "\n";
  return 0;
}

int run_encode(const EncodeArgs& a) {
  const Vocabulary vocab = load_vocab(a.model);
  const PretokMode mode = parse_pretok_mode(a.pretok);
  Encoder encoder(vocab);
  std::vector<std::vector<std::string>> out;
  for (const std::string& line : read_lines(a.input)) {
    out.push_back(encoder.encode_line(line, mode));
  }
  write_token_file(a.output, out);
  return 0;
}

int run_decode(const DecodeArgs& a) {
  const Vocabulary vocab = load_vocab(a.model);
  std::string text;
  for (const auto& pieces : read_token_file(a.input)) {
    text += decode(pieces, vocab.scheme(), vocab.meta_symbol());
    text += '\n';
  }
  write_text(a.output, text);
  return 0;
}

int run_stats(const StatsArgs& a) {
  const Vocabulary vocab = load_vocab(a.model);
  const PretokMode mode = parse_pretok_mode(a.pretok);
  const EncodedCorpus encoded = encode_corpus(read_lines(a.corpus), vocab, mode);
  const StatsReport report =
      compute_stats(fs::path(a.model).stem().string(),
                    fs::path(a.corpus).stem().string(), encoded, vocab);
  json j = to_json(report);
  j["config"] = {{"model", a.model},
                 {"corpus", a.corpus},
                 {"pretok", to_string(mode)},
                 {"scheme", to_string(vocab.scheme())},
                 {"vocab_size", vocab.size()}};
  write_json(a.out, j);
  return 0;
}

int run_ppl(const PplArgs& a) {
  const BigramModel model =
      BigramModel::fit(read_token_file(a.train_tokens), a.epsilon);
  const PerplexityResult r = evaluate(model, read_token_file(a.eval_tokens));
  write_json(a.out, {{"perplexity", r.perplexity},
                     {"log2_prob", r.log2_prob},
                     {"predicted_tokens", r.predicted_tokens},
                     {"unknown_tokens", r.unknown_tokens},
                     {"vocab_size", model.vocab_size()},
                     {"config",
                      {{"train_tokens", a.train_tokens},
                       {"eval_tokens", a.eval_tokens},
                       {"epsilon", a.epsilon}}}});
  return 0;
}

json exclusive_json(const std::vector<ExclusiveMatch>& matches) {
  json out = json::array();
  for (const ExclusiveMatch& m : matches) {
    json positions = json::array();
    for (PositionClass p : m.positions) positions.push_back(to_string(p));
    out.push_back({{"bare", m.bare}, {"positions", positions}});
  }
  return out;
}

int run_morph(const MorphArgs& a) {
  const Vocabulary init = load_vocab(a.init_model);
  const Vocabulary fin = load_vocab(a.fin_model);
  const MorphLexicon lexicon = load_lexicon(a.lexicon, a.fold_case);
  const Coverage ci = coverage(init, lexicon);
  const Coverage cf = coverage(fin, lexicon);
  const ExclusiveMatches ex = exclusive_matches(init, fin, lexicon);
  const std::vector<AgreementRecord> records =
      build_agreement_table(init, fin, lexicon);
  json j = {{"lexicon_size", lexicon.size()},
            {"lexicon_lines", lexicon.lines_read},
            {"lexicon_skipped", lexicon.skipped},
            {"coverage_init", {{"count", ci.count}, {"fraction", ci.fraction}}},
            {"coverage_fin", {{"count", cf.count}, {"fraction", cf.fraction}}},
            {"union", union_coverage(init, fin, lexicon)},
            {"only_init", exclusive_json(ex.only_a)},
            {"only_fin", exclusive_json(ex.only_b)},
            {"records", records.size()},
            {"config",
             {{"init_model", a.init_model},
              {"fin_model", a.fin_model},
              {"lexicon", a.lexicon},
              {"fold_case", a.fold_case}}}};
  try {
    j["regression"] = to_json(regress_agreement(records));
  } catch (const DataError& e) {
    j["regression"] = nullptr;
    j["regression_error"] = e.what();
  }
  write_json(a.out, j);
  if (!a.export_scores.empty()) {
    std::ostringstream scores;
    export_score_distributions(records, scores);
    write_text(a.export_scores, scores.str());
  }
  return 0;
}

int run_run(const RunArgs& a) {
  ExperimentConfig config = load_experiment_config(a.config);
  for (const std::string& kv : a.overrides) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--set expects key=value, got '" + kv + "'");
    }
    config.set(kv.substr(0, eq), kv.substr(eq + 1), fs::current_path());
  }
  const ReportBundle bundle =
      run_experiment(config, a.out_dir, a.quiet ? nullptr : &std::cerr);
  std::cout << render_report(bundle);
  return 0;
}

int run_report(const ReportArgs& a) {
  std::ifstream in(a.bundle);
  if (!in) throw UsageError("cannot open bundle '" + a.bundle + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("bundle is not valid JSON: ") + e.what());
  }
  const std::string text = render_report(bundle_from_json(j));
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return 0;
}

int real_main(int argc, char** argv) {
  CLI::App app{"Unigram LM subword tokenizer with word-boundary marking"};
  app.require_subcommand(1);
  std::function<int()> action;

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand("train", "train a vocabulary");
  train_cmd->add_option("--input", train_args.input)->required();
  train_cmd->add_option("--model-out", train_args.model_out)->required();
  train_cmd->add_option("--vocab-size", train_args.vocab_size)->required();
  train_cmd->add_option("--scheme", train_args.scheme, "init or fin")->required();
  train_cmd->add_option("--pretok", train_args.pretok, "raw, rules or external")
      ->required();
  train_cmd->add_option("--shrink", train_args.shrink, "kept fraction per round")
      ->capture_default_str();
  train_cmd->add_option("--seed-max-len", train_args.seed_max_len)
      ->capture_default_str();
  train_cmd->add_option("--seed-min-count", train_args.seed_min_count)
      ->capture_default_str();
  train_cmd->add_option("--em-iters", train_args.em_iters)->capture_default_str();
  train_cmd->add_option("--threads", train_args.threads)->capture_default_str();
  train_cmd->add_option("--meta", train_args.meta, "meta symbol, e.g. U+2581");
  train_cmd->callback([&] { action = [&] { return run_train(train_args); }; });

  EncodeArgs encode_args;
  CLI::App* encode_cmd = app.add_subcommand("encode", "segment text into pieces");
  encode_cmd->add_option("--model", encode_args.model)->required();
  encode_cmd->add_option("--input", encode_args.input)->required();
  encode_cmd->add_option("--output", encode_args.output)->required();
  encode_cmd->add_option("--pretok", encode_args.pretok)->capture_default_str();
  encode_cmd->callback([&] { action = [&] { return run_encode(encode_args); }; });

  DecodeArgs decode_args;
  CLI::App* decode_cmd = app.add_subcommand("decode", "join pieces back into text");
  decode_cmd->add_option("--model", decode_args.model)->required();
  decode_cmd->add_option("--input", decode_args.input)->required();
  decode_cmd->add_option("--output", decode_args.output)->required();
  decode_cmd->callback([&] { action = [&] { return run_decode(decode_args); }; });

  StatsArgs stats_args;
  CLI::App* stats_cmd = app.add_subcommand("stats", "corpus-level measures");
  stats_cmd->add_option("--model", stats_args.model)->required();
  stats_cmd->add_option("--corpus", stats_args.corpus)->required();
  stats_cmd->add_option("--pretok", stats_args.pretok)->capture_default_str();
  stats_cmd->add_option("--out", stats_args.out)->required();
  stats_cmd->callback([&] { action = [&] { return run_stats(stats_args); }; });

  PplArgs ppl_args;
  CLI::App* ppl_cmd = app.add_subcommand("ppl", "bigram perplexity over tokens");
  ppl_cmd->add_option("--train-tokens", ppl_args.train_tokens)->required();
  ppl_cmd->add_option("--eval-tokens", ppl_args.eval_tokens)->required();
  ppl_cmd->add_option("--epsilon", ppl_args.epsilon)->capture_default_str();
  ppl_cmd->add_option("--out", ppl_args.out)->required();
  ppl_cmd->callback([&] { action = [&] { return run_ppl(ppl_args); }; });

  MorphArgs morph_args;
  CLI::App* morph_cmd = app.add_subcommand("morph", "morpheme coverage");
  morph_cmd->add_option("--init-model", morph_args.init_model)->required();
  morph_cmd->add_option("--fin-model", morph_args.fin_model)->required();
  morph_cmd->add_option("--lexicon", morph_args.lexicon)->required();
  morph_cmd->add_option("--out", morph_args.out)->required();
  morph_cmd->add_option("--export-scores", morph_args.export_scores);
  morph_cmd->add_flag("--fold-case", morph_args.fold_case);
  morph_cmd->callback([&] { action = [&] { return run_morph(morph_args); }; });

  ReportArgs report_args;
  CLI::App* report_cmd = app.add_subcommand("report", "render a report bundle");
  report_cmd->add_option("--bundle", report_args.bundle)->required();
  report_cmd->add_option("--out", report_args.out);
  report_cmd->callback([&] { action = [&] { return run_report(report_args); }; });

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "run the full experiment");
  run_cmd->add_option("--config", run_args.config)->required();
  run_cmd->add_option("--out-dir", run_args.out_dir)->required();
  run_cmd->add_option("--set", run_args.overrides, "key=value override");
  run_cmd->add_flag("--quiet", run_args.quiet);
  run_cmd->callback([&] { action = [&] { return run_run(run_args); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }
  return action();
}

}  // namespace
}  // namespace boundkit

int main(int argc, char** argv) {
  using boundkit::ExitCode;
  try {
    return boundkit::real_main(argc, argv);
  } catch (const boundkit::Error& e) {
    std::cerr << "boundkit: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "boundkit: internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInvariant);
  }
}
