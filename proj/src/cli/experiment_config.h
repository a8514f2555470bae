// cli/experiment_config.h

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

#ifndef SENAN_CLI_EXPERIMENT_CONFIG_H_
#define SENAN_CLI_EXPERIMENT_CONFIG_H_

#include <string>

#include "corpus/corpus.h"
#include "features/mfcc.h"
#include "features/specaug.h"

namespace senan {

enum class TrainMode { kBaseline, kProposed, kOracle };

TrainMode ParseTrainMode(const std::string &name);
std::string TrainModeName(TrainMode mode);

// Flat key=value experiment configuration with dotted section keys
// (corpus.*, features.*, senan.*, agg.*, am.*, train.*, specaug.*,
// decode.*). Unknown keys are rejected; values are type-checked on load.
struct ExperimentConfig {
  // corpus
  int corpus_num_train = 200;
  int corpus_num_test = 50;
  int corpus_num_speakers = 10;
  int corpus_num_phones = 10;
  int corpus_states_per_phone = 1;
  double corpus_snr_min_db = 0.0;
  double corpus_snr_max_db = 10.0;
  int corpus_min_phones = 3;
  int corpus_max_phones = 10;
  double corpus_min_segment_ms = 80.0;
  double corpus_max_segment_ms = 200.0;
  int corpus_noise_kinds = 3;
  int corpus_sample_rate = 16000;
  bool corpus_augment = false;
  uint64_t corpus_seed = 1234;

  // features
  int features_frame_ms = 25;
  int features_hop_ms = 10;
  int features_n_mels = 40;
  int features_n_ceps = 40;
  int features_spk_dim = 8;
  uint64_t features_spk_seed = 9001;

  // senan
  int senan_h_first = 64;
  int senan_h_last = 128;
  bool senan_nse_enabled = true;

  // aggregation
  std::string agg_enh = "cont";
  std::string agg_nse = "stat";

  // acoustic model
  std::string am_arch = "tdnnf";
  int am_layers = 4;
  int am_hidden = 64;
  int am_bottleneck = 16;
  int am_final_bottleneck = 24;
  double am_bypass_scale = 0.66;
  std::string am_conv_filters = "4,8";

  // training
  std::string train_mode = "proposed";
  int train_epochs = 20;
  int train_batch_size = 8;
  double train_lr_initial = 0.01;
  double train_lr_final = 0.001;
  int train_constraint_every = 4;
  uint64_t train_seed = 1;
  int train_threads = 1;
  double train_momentum = 0.0;
  double train_alpha = 5.0;
  double train_beta = 0.2;
  // l2 caps on the per-step parameter change, per tensor and globally;
  // 0 disables either cap.
  double train_max_change_per_param = 0.75;
  double train_max_param_change = 2.0;

  // spec augment
  bool specaug_enabled = false;
  int specaug_time_masks = 2;
  int specaug_max_time_width = 20;
  int specaug_feat_masks = 2;
  int specaug_max_feat_width = 8;

  // decode
  std::string decode_split = "test";

  void Apply(const std::string &key, const std::string &value);
  void LoadFile(const std::string &path);
  std::string ToString() const;  // canonical full key=value dump
  void Validate() const;

  CorpusConfig MakeCorpusConfig(int num_utterances) const;
  FeatureConfig MakeFeatureConfig() const;
  SpecAugConfig MakeSpecAugConfig() const;
  std::vector<int> ConvFilters() const;
  int NumStates() const {
    return corpus_num_phones * corpus_states_per_phone;
  }
};

}  // namespace senan

#endif  // SENAN_CLI_EXPERIMENT_CONFIG_H_
