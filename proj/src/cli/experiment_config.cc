// cli/experiment_config.cc

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

#include "cli/experiment_config.h"

#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "aggregation/aggregation.h"
#include "am/acoustic_model.h"
#include "util/io.h"

namespace senan {

TrainMode ParseTrainMode(const std::string &name) {
  if (name == "baseline") return TrainMode::kBaseline;
  if (name == "proposed") return TrainMode::kProposed;
  if (name == "oracle") return TrainMode::kOracle;
  ThrowError(ErrorCode::kInvalidConfig, "unknown train mode: " + name);
}

std::string TrainModeName(TrainMode mode) {
  switch (mode) {
    case TrainMode::kBaseline:
      return "baseline";
    case TrainMode::kProposed:
      return "proposed";
    case TrainMode::kOracle:
      return "oracle";
  }
  return "?";
}

namespace {

int ParseInt(const std::string &key, const std::string &value) {
  try {
    size_t pos = 0;
    int v = std::stoi(value, &pos);
    SENAN_CHECK(pos == value.size(), ErrorCode::kInvalidConfig, "");
    return v;
  } catch (...) {
    ThrowError(ErrorCode::kInvalidConfig,
               "expected integer for " + key + ", got '" + value + "'");
  }
}

uint64_t ParseU64(const std::string &key, const std::string &value) {
  try {
    size_t pos = 0;
    uint64_t v = std::stoull(value, &pos);
    SENAN_CHECK(pos == value.size(), ErrorCode::kInvalidConfig, "");
    return v;
  } catch (...) {
    ThrowError(ErrorCode::kInvalidConfig,
               "expected unsigned integer for " + key + ", got '" + value +
                   "'");
  }
}

double ParseDouble(const std::string &key, const std::string &value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    SENAN_CHECK(pos == value.size(), ErrorCode::kInvalidConfig, "");
    return v;
  } catch (...) {
    ThrowError(ErrorCode::kInvalidConfig,
               "expected number for " + key + ", got '" + value + "'");
  }
}

bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  ThrowError(ErrorCode::kInvalidConfig,
             "expected boolean for " + key + ", got '" + value + "'");
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void ExperimentConfig::Apply(const std::string &key,
                             const std::string &value) {
  if (key == "corpus.num_train") corpus_num_train = ParseInt(key, value);
  else if (key == "corpus.num_test") corpus_num_test = ParseInt(key, value);
  else if (key == "corpus.num_speakers") corpus_num_speakers = ParseInt(key, value);
  else if (key == "corpus.num_phones") corpus_num_phones = ParseInt(key, value);
  else if (key == "corpus.states_per_phone") corpus_states_per_phone = ParseInt(key, value);
  else if (key == "corpus.snr_min_db") corpus_snr_min_db = ParseDouble(key, value);
  else if (key == "corpus.snr_max_db") corpus_snr_max_db = ParseDouble(key, value);
  else if (key == "corpus.min_phones") corpus_min_phones = ParseInt(key, value);
  else if (key == "corpus.max_phones") corpus_max_phones = ParseInt(key, value);
  else if (key == "corpus.min_segment_ms") corpus_min_segment_ms = ParseDouble(key, value);
  else if (key == "corpus.max_segment_ms") corpus_max_segment_ms = ParseDouble(key, value);
  else if (key == "corpus.noise_kinds") corpus_noise_kinds = ParseInt(key, value);
  else if (key == "corpus.sample_rate") corpus_sample_rate = ParseInt(key, value);
  else if (key == "corpus.augment") corpus_augment = ParseBool(key, value);
  else if (key == "corpus.seed") corpus_seed = ParseU64(key, value);
  else if (key == "features.frame_ms") features_frame_ms = ParseInt(key, value);
  else if (key == "features.hop_ms") features_hop_ms = ParseInt(key, value);
  else if (key == "features.n_mels") features_n_mels = ParseInt(key, value);
  else if (key == "features.n_ceps") features_n_ceps = ParseInt(key, value);
  else if (key == "features.spk_dim") features_spk_dim = ParseInt(key, value);
  else if (key == "features.spk_seed") features_spk_seed = ParseU64(key, value);
  else if (key == "senan.h_first") senan_h_first = ParseInt(key, value);
  else if (key == "senan.h_last") senan_h_last = ParseInt(key, value);
  else if (key == "senan.nse_enabled") senan_nse_enabled = ParseBool(key, value);
  else if (key == "agg.enh") agg_enh = value;
  else if (key == "agg.nse") agg_nse = value;
  else if (key == "am.arch") am_arch = value;
  else if (key == "am.layers") am_layers = ParseInt(key, value);
  else if (key == "am.hidden") am_hidden = ParseInt(key, value);
  else if (key == "am.bottleneck") am_bottleneck = ParseInt(key, value);
  else if (key == "am.final_bottleneck") am_final_bottleneck = ParseInt(key, value);
  else if (key == "am.bypass_scale") am_bypass_scale = ParseDouble(key, value);
  else if (key == "am.conv_filters") am_conv_filters = value;
  else if (key == "train.mode") train_mode = value;
  else if (key == "train.epochs") train_epochs = ParseInt(key, value);
  else if (key == "train.batch_size") train_batch_size = ParseInt(key, value);
  else if (key == "train.lr_initial") train_lr_initial = ParseDouble(key, value);
  else if (key == "train.lr_final") train_lr_final = ParseDouble(key, value);
  else if (key == "train.constraint_every") train_constraint_every = ParseInt(key, value);
  else if (key == "train.seed") train_seed = ParseU64(key, value);
  else if (key == "train.threads") train_threads = ParseInt(key, value);
  else if (key == "train.momentum") train_momentum = ParseDouble(key, value);
  else if (key == "train.alpha") train_alpha = ParseDouble(key, value);
  else if (key == "train.beta") train_beta = ParseDouble(key, value);
  else if (key == "train.max_param_change") train_max_param_change = ParseDouble(key, value);
  else if (key == "train.max_change_per_param") train_max_change_per_param = ParseDouble(key, value);
  else if (key == "specaug.enabled") specaug_enabled = ParseBool(key, value);
  else if (key == "specaug.time_masks") specaug_time_masks = ParseInt(key, value);
  else if (key == "specaug.max_time_width") specaug_max_time_width = ParseInt(key, value);
  else if (key == "specaug.feat_masks") specaug_feat_masks = ParseInt(key, value);
  else if (key == "specaug.max_feat_width") specaug_max_feat_width = ParseInt(key, value);
  else if (key == "decode.split") decode_split = value;
  else
    ThrowError(ErrorCode::kInvalidConfig, "unknown config key: " + key);
}

void ExperimentConfig::LoadFile(const std::string &path) {
  std::istringstream lines(ReadTextFile(path));
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    // strip comments and whitespace
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    auto eq = line.find('=');
    SENAN_CHECK(eq != std::string::npos, ErrorCode::kInvalidConfig,
                path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string &s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(value);
    Apply(key, value);
  }
  Validate();
}

std::string ExperimentConfig::ToString() const {
  std::ostringstream os;
  os << "agg.enh=" << agg_enh << "\n";
  os << "agg.nse=" << agg_nse << "\n";
  os << "am.arch=" << am_arch << "\n";
  os << "am.bottleneck=" << am_bottleneck << "\n";
  os << "am.bypass_scale=" << FormatDouble(am_bypass_scale) << "\n";
  os << "am.conv_filters=" << am_conv_filters << "\n";
  os << "am.final_bottleneck=" << am_final_bottleneck << "\n";
  os << "am.hidden=" << am_hidden << "\n";
  os << "am.layers=" << am_layers << "\n";
  os << "corpus.augment=" << (corpus_augment ? "true" : "false") << "\n";
  os << "corpus.max_phones=" << corpus_max_phones << "\n";
  os << "corpus.max_segment_ms=" << FormatDouble(corpus_max_segment_ms) << "\n";
  os << "corpus.min_phones=" << corpus_min_phones << "\n";
  os << "corpus.min_segment_ms=" << FormatDouble(corpus_min_segment_ms) << "\n";
  os << "corpus.noise_kinds=" << corpus_noise_kinds << "\n";
  os << "corpus.num_phones=" << corpus_num_phones << "\n";
  os << "corpus.num_speakers=" << corpus_num_speakers << "\n";
  os << "corpus.num_test=" << corpus_num_test << "\n";
  os << "corpus.num_train=" << corpus_num_train << "\n";
  os << "corpus.sample_rate=" << corpus_sample_rate << "\n";
  os << "corpus.seed=" << corpus_seed << "\n";
  os << "corpus.snr_max_db=" << FormatDouble(corpus_snr_max_db) << "\n";
  os << "corpus.snr_min_db=" << FormatDouble(corpus_snr_min_db) << "\n";
  os << "corpus.states_per_phone=" << corpus_states_per_phone << "\n";
  os << "decode.split=" << decode_split << "\n";
  os << "features.frame_ms=" << features_frame_ms << "\n";
  os << "features.hop_ms=" << features_hop_ms << "\n";
  os << "features.n_ceps=" << features_n_ceps << "\n";
  os << "features.n_mels=" << features_n_mels << "\n";
  os << "features.spk_dim=" << features_spk_dim << "\n";
  os << "features.spk_seed=" << features_spk_seed << "\n";
  os << "senan.h_first=" << senan_h_first << "\n";
  os << "senan.h_last=" << senan_h_last << "\n";
  os << "senan.nse_enabled=" << (senan_nse_enabled ? "true" : "false") << "\n";
  os << "specaug.enabled=" << (specaug_enabled ? "true" : "false") << "\n";
  os << "specaug.feat_masks=" << specaug_feat_masks << "\n";
  os << "specaug.max_feat_width=" << specaug_max_feat_width << "\n";
  os << "specaug.max_time_width=" << specaug_max_time_width << "\n";
  os << "specaug.time_masks=" << specaug_time_masks << "\n";
  os << "train.alpha=" << FormatDouble(train_alpha) << "\n";
  os << "train.batch_size=" << train_batch_size << "\n";
  os << "train.beta=" << FormatDouble(train_beta) << "\n";
  os << "train.constraint_every=" << train_constraint_every << "\n";
  os << "train.epochs=" << train_epochs << "\n";
  os << "train.lr_final=" << FormatDouble(train_lr_final) << "\n";
  os << "train.max_change_per_param=" << FormatDouble(train_max_change_per_param) << "\n";
  os << "train.max_param_change=" << FormatDouble(train_max_param_change) << "\n";
  os << "train.lr_initial=" << FormatDouble(train_lr_initial) << "\n";
  os << "train.mode=" << train_mode << "\n";
  os << "train.momentum=" << FormatDouble(train_momentum) << "\n";
  os << "train.seed=" << train_seed << "\n";
  os << "train.threads=" << train_threads << "\n";
  return os.str();
}

void ExperimentConfig::Validate() const {
  MakeCorpusConfig(std::max(1, corpus_num_train)).Validate();
  MakeFeatureConfig().Validate();
  ParseAggKind(agg_enh);
  ParseAggKind(agg_nse);
  ParseAmArch(am_arch);
  ParseTrainMode(train_mode);
  SENAN_CHECK(corpus_num_train >= 1, ErrorCode::kInvalidConfig,
              "corpus.num_train must be >= 1");
  SENAN_CHECK(corpus_num_test >= 0, ErrorCode::kInvalidConfig,
              "corpus.num_test must be >= 0");
  SENAN_CHECK(train_epochs >= 0 && train_batch_size >= 1,
              ErrorCode::kInvalidConfig, "bad training counts");
  SENAN_CHECK(train_lr_initial >= 0.0 && train_lr_final >= 0.0 &&
                  train_lr_final <= train_lr_initial,
              ErrorCode::kInvalidConfig,
              "lr_final must not exceed lr_initial");
  SENAN_CHECK(train_alpha >= 0.0 && train_beta >= 0.0,
              ErrorCode::kInvalidConfig, "loss weights must be nonnegative");
  SENAN_CHECK(train_max_param_change >= 0.0 && train_max_change_per_param >= 0.0,
              ErrorCode::kInvalidConfig,
              "step-change caps must be nonnegative");
  SENAN_CHECK(train_constraint_every >= 1, ErrorCode::kInvalidConfig,
              "train.constraint_every must be >= 1");
  SENAN_CHECK(train_threads >= 1, ErrorCode::kInvalidConfig,
              "train.threads must be >= 1");
  SENAN_CHECK(senan_h_last >= senan_h_first && senan_h_first >= 1,
              ErrorCode::kInvalidConfig,
              "senan hidden sizes must be nondecreasing");
  SENAN_CHECK(specaug_time_masks >= 0 && specaug_feat_masks >= 0 &&
                  specaug_max_time_width >= 0 && specaug_max_feat_width >= 0,
              ErrorCode::kInvalidConfig, "bad specaug parameters");
  SENAN_CHECK(decode_split == "train" || decode_split == "test",
              ErrorCode::kInvalidConfig, "decode.split must be train|test");
  ConvFilters();
}

CorpusConfig ExperimentConfig::MakeCorpusConfig(int num_utterances) const {
  CorpusConfig cfg;
  cfg.num_utterances = num_utterances;
  cfg.num_speakers = corpus_num_speakers;
  cfg.num_phones = corpus_num_phones;
  cfg.states_per_phone = corpus_states_per_phone;
  cfg.snr_min_db = corpus_snr_min_db;
  cfg.snr_max_db = corpus_snr_max_db;
  cfg.min_phones = corpus_min_phones;
  cfg.max_phones = corpus_max_phones;
  cfg.min_segment_ms = corpus_min_segment_ms;
  cfg.max_segment_ms = corpus_max_segment_ms;
  cfg.noise_kinds = corpus_noise_kinds;
  cfg.sample_rate = corpus_sample_rate;
  cfg.frame_ms = features_frame_ms;
  cfg.hop_ms = features_hop_ms;
  cfg.seed = corpus_seed;
  return cfg;
}

FeatureConfig ExperimentConfig::MakeFeatureConfig() const {
  FeatureConfig cfg;
  cfg.frame_ms = features_frame_ms;
  cfg.hop_ms = features_hop_ms;
  cfg.n_mels = features_n_mels;
  cfg.n_ceps = features_n_ceps;
  cfg.spk_dim = features_spk_dim;
  cfg.spk_seed = features_spk_seed;
  return cfg;
}

SpecAugConfig ExperimentConfig::MakeSpecAugConfig() const {
  SpecAugConfig cfg;
  cfg.n_time_masks = specaug_time_masks;
  cfg.max_time_width = specaug_max_time_width;
  cfg.n_feat_masks = specaug_feat_masks;
  cfg.max_feat_width = specaug_max_feat_width;
  return cfg;
}

std::vector<int> ExperimentConfig::ConvFilters() const {
  std::vector<int> filters;
  for (const std::string &tok : SplitString(am_conv_filters, ',')) {
    if (tok.empty()) continue;
    filters.push_back(ParseInt("am.conv_filters", tok));
    SENAN_CHECK(filters.back() >= 1, ErrorCode::kInvalidConfig,
                "conv filter counts must be positive");
  }
  return filters;
}

}  // namespace senan
