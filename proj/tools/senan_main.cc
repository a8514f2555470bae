// tools/senan_main.cc

// Copyright 2026  The senan authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "util/io.h"

namespace {

// 0 success, 2 config error, 3 data error, 4 runtime error.
int ExitCodeFor(senan::ErrorCode code) {
  using senan::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidConfig:
      return 2;
    case ErrorCode::kIoError:
    case ErrorCode::kMissingUtterance:
    case ErrorCode::kUnknownSpeaker:
    case ErrorCode::kUnknownPhone:
    case ErrorCode::kEmptyTranscript:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kLabelOutOfRange:
    case ErrorCode::kTooShort:
      return 3;
    default:
      return 4;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{
      "speech-enhanced, noise-aware joint training on a synthetic corpus"};
  app.require_subcommand(1);

  std::string config_path, out_dir, seed_str;
  app.add_option("--config", config_path, "experiment config file (key=value)")
      ->envname("SENAN_CONFIG");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed_str, "override corpus and training seeds");

  auto *gen = app.add_subcommand("gen-corpus", "generate the paired corpus");

  std::string corpus_dir, mode = "proposed";
  auto *train = app.add_subcommand("train", "train a model on a corpus");
  train->add_option("--corpus", corpus_dir, "corpus directory")->required();
  train->add_option("--mode", mode, "baseline|proposed|oracle");

  std::string run_dir, split = "test", hyps_path, manifest_path;
  auto *decode = app.add_subcommand("decode", "Viterbi-decode a split");
  decode->add_option("--run", run_dir, "training run directory")->required();
  decode->add_option("--corpus", corpus_dir, "corpus directory")->required();
  decode->add_option("--split", split, "train|test");

  auto *score = app.add_subcommand("score", "score hypotheses against refs");
  score->add_option("--hyps", hyps_path, "hypotheses file")->required();
  score->add_option("--manifest", manifest_path, "reference manifest")
      ->required();

  int seeds = 1;
  auto *ablate = app.add_subcommand("ablate", "component and agg ablations");
  ablate->add_option("--corpus", corpus_dir, "corpus directory")->required();
  ablate->add_option("--seeds", seeds, "seeds to average per variant");

  auto *report = app.add_subcommand("report", "summarize a training run");
  report->add_option("--run", run_dir, "training run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    senan::ExperimentConfig cfg;
    if (!config_path.empty()) cfg.LoadFile(config_path);
    if (!seed_str.empty()) {
      cfg.Apply("corpus.seed", seed_str);
      cfg.Apply("train.seed", seed_str);
    }

    if (gen->parsed()) {
      SENAN_CHECK(!out_dir.empty(), senan::ErrorCode::kInvalidConfig,
                  "gen-corpus needs --out");
      senan::CmdGenCorpus(cfg, out_dir, std::cout);
    } else if (train->parsed()) {
      SENAN_CHECK(!out_dir.empty(), senan::ErrorCode::kInvalidConfig,
                  "train needs --out");
      cfg.Apply("train.mode", mode);
      senan::CmdTrain(cfg, corpus_dir, out_dir, std::cout);
    } else if (decode->parsed()) {
      std::string out_path = out_dir.empty()
                                 ? senan::JoinPath(run_dir, "hyps.tsv")
                                 : senan::JoinPath(out_dir, "hyps.tsv");
      if (!out_dir.empty()) senan::EnsureDirectory(out_dir);
      senan::CmdDecode(run_dir, corpus_dir, split, out_path, std::cout);
    } else if (score->parsed()) {
      senan::CmdScore(hyps_path, manifest_path, std::cout);
    } else if (ablate->parsed()) {
      SENAN_CHECK(!out_dir.empty(), senan::ErrorCode::kInvalidConfig,
                  "ablate needs --out");
      senan::CmdAblate(cfg, corpus_dir, out_dir, seeds, std::cout);
    } else if (report->parsed()) {
      senan::CmdReport(run_dir, std::cout);
    }
  } catch (const senan::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
