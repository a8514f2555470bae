// training/trainer.h

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

#ifndef SENAN_TRAINING_TRAINER_H_
#define SENAN_TRAINING_TRAINER_H_

#include <memory>
#include <string>
#include <vector>

#include "corpus/corpus.h"
#include "features/speaker.h"
#include "lfmmi/mmi_loss.h"
#include "training/joint_model.h"
#include "training/losses.h"

namespace senan {

// Per-utterance material precomputed once per run: normalized noisy features
// with the speaker vector appended, the two reconstruction targets, the
// reference alignment and the numerator graph.
struct PreparedUtterance {
  std::string id;
  Tensor x_nsy;
  Tensor y_clean;
  Tensor y_nse;
  std::vector<int> transcript;
  std::vector<int> alignment;
  Graph num_graph;  // empty when prepared without an LM
  int frames = 0;
};

// Feature front end shared by training and decoding.
class DataPipeline {
 public:
  explicit DataPipeline(const ExperimentConfig &cfg);

  PreparedUtterance Prepare(const Utterance &utt, const PhoneLm *lm);
  const PhoneInventory &inventory() const { return inventory_; }

 private:
  ExperimentConfig cfg_;
  MfccComputer mfcc_;
  SpeakerTable speakers_;
  PhoneInventory inventory_;
};

struct EpochMetrics {
  int epoch;
  int64_t step;
  double lr;
  double l_total, l_ce, f_mmi, l_enh, l_nse;  // per-frame averages
  int skipped;
};

// Joint optimization of the enhancement network, the aggregation parameters
// and the acoustic model with plain SGD under the combined CE / MMI /
// reconstruction objective. Per-utterance losses are summed, divided by the
// total batch frame count, and the semi-orthogonal constraint is re-applied
// every constraint_every steps. Deterministic given the config seed,
// independent of the thread count.
class Trainer {
 public:
  Trainer(const ExperimentConfig &cfg, const Corpus &train_corpus);

  struct StepResult {
    double ce_sum = 0.0, fmmi_sum = 0.0, enh_sum = 0.0, nse_sum = 0.0;
    int64_t frames = 0;
    int skipped = 0;

    double LTotalPerFrame(const LossWeights &w) const {
      if (frames == 0) return 0.0;
      return (w.alpha * ce_sum - fmmi_sum + w.beta * (enh_sum + nse_sum)) /
             static_cast<double>(frames);
    }
  };

  // One optimizer step over the given utterance indices.
  StepResult Step(const std::vector<int> &indices);

  // Full loop; when out_dir is non-empty writes metrics.csv plus final and
  // best checkpoints there.
  std::vector<EpochMetrics> Run(const std::string &out_dir);

  JointModel &model() { return *model_; }
  const std::vector<PreparedUtterance> &data() const { return data_; }
  const Graph &den_graph() const { return den_graph_; }
  const PhoneLm &lm() const { return *lm_; }
  const LossWeights &weights() const { return weights_; }
  int64_t step_count() const { return step_; }
  int64_t total_steps() const { return total_steps_; }
  double CurrentLr() const;

 private:
  struct UttWork {
    std::unordered_map<Value *, Tensor> adjoints;
    double ce = 0.0, fmmi = 0.0, enh = 0.0, nse = 0.0;
    int frames = 0;
    bool skipped = false;
  };
  UttWork ProcessUtterance(int index, uint64_t specaug_seed) const;

  ExperimentConfig cfg_;
  LossWeights weights_;
  std::unique_ptr<DataPipeline> pipeline_;
  std::unique_ptr<PhoneLm> lm_;
  Graph den_graph_;
  std::vector<PreparedUtterance> data_;
  std::unique_ptr<JointModel> model_;
  std::vector<Tensor> velocity_;  // momentum buffers, parallel to params
  Rng shuffle_rng_;
  Rng specaug_rng_;
  int64_t step_ = 0;
  int64_t total_steps_ = 0;
};

// Metrics CSV with header epoch,step,lr,L_total,L_ce,F_mmi,L_enh,L_nse,skipped.
std::string MetricsCsv(const std::vector<EpochMetrics> &rows);

}  // namespace senan

#endif  // SENAN_TRAINING_TRAINER_H_
