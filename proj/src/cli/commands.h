// cli/commands.h

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

#ifndef SENAN_CLI_COMMANDS_H_
#define SENAN_CLI_COMMANDS_H_

#include <iostream>
#include <string>
#include <vector>

#include "cli/scoring.h"
#include "training/trainer.h"

namespace senan {

// Writes train/ and test/ corpora plus config.used under out_dir.
void CmdGenCorpus(const ExperimentConfig &cfg, const std::string &out_dir,
                  std::ostream &log);

// Trains on corpus_dir/train; writes metrics.csv, final.ckpt, best.ckpt and
// config.used under out_dir. Corpus-defining keys are taken from the corpus
// directory's config.used when present.
std::vector<EpochMetrics> CmdTrain(ExperimentConfig cfg,
                                   const std::string &corpus_dir,
                                   const std::string &out_dir,
                                   std::ostream &log);

// Viterbi decoding of a split against the run's model; writes `hyps.tsv`
// (one `id<TAB>phones` line per utterance) plus a `hyps.tsv.frames` sidecar
// with the per-frame state labels.
void CmdDecode(const std::string &run_dir, const std::string &corpus_dir,
               const std::string &split, const std::string &out_path,
               std::ostream &log);

// Levenshtein scoring of a hypotheses file against the manifest transcripts;
// frame state accuracy comes from the `.frames` sidecar when present.
ScoreReport CmdScore(const std::string &hyps_path,
                     const std::string &manifest_path, std::ostream &log);

// Component ladder and noise-aggregator sweep with a shared seed; emits
// ablation_ladder.csv, ablation_aggregators.csv and bar charts.
void CmdAblate(const ExperimentConfig &base, const std::string &corpus_dir,
               const std::string &out_dir, int num_seeds, std::ostream &log);

// Summarizes a training run directory into report.md and loss_curves.svg.
void CmdReport(const std::string &run_dir, std::ostream &log);

// Decoding helpers shared with the tests and the ablation harness.
struct DecodedUtterance {
  std::string id;
  std::vector<int> phones;
  std::vector<int> frame_labels;
  bool no_path = false;
};
std::vector<DecodedUtterance> DecodeCorpus(const ExperimentConfig &cfg,
                                           JointModel *model,
                                           const Corpus &split_corpus,
                                           const Corpus &train_corpus);

double EvaluateWer(const ExperimentConfig &cfg, JointModel *model,
                   const Corpus &split_corpus, const Corpus &train_corpus);

}  // namespace senan

#endif  // SENAN_CLI_COMMANDS_H_
