// training/joint_model.cc

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

#include "training/joint_model.h"

namespace senan {

JointModel::JointModel(const ExperimentConfig &cfg, TrainMode mode)
    : mode_(mode), nse_enabled_(cfg.senan_nse_enabled) {
  Rng rng(DeriveSeed(cfg.train_seed, "init"));
  int d_nsy = cfg.features_n_ceps + cfg.features_spk_dim;
  bool with_streams = mode_ != TrainMode::kBaseline;

  if (mode_ == TrainMode::kProposed) {
    SenanConfig scfg;
    scfg.input_dim = d_nsy;
    scfg.output_dim = cfg.features_n_ceps;
    scfg.h_first = cfg.senan_h_first;
    scfg.h_last = cfg.senan_h_last;
    senan_ = std::make_unique<SenanModel>(scfg, &params_, &rng);
  }
  if (with_streams) {
    agg_enh_ = std::make_unique<Aggregator>(ParseAggKind(cfg.agg_enh),
                                            cfg.features_n_ceps, &params_,
                                            &rng, "agg.enh");
    if (nse_enabled_)
      agg_nse_ = std::make_unique<Aggregator>(ParseAggKind(cfg.agg_nse),
                                              cfg.features_n_ceps, &params_,
                                              &rng, "agg.nse");
  }

  InputFrameSpec spec;
  spec.d_nsy = d_nsy;
  spec.d_enh = with_streams ? agg_enh_->OutputDim() : 0;
  spec.d_nse = with_streams && nse_enabled_ ? agg_nse_->OutputDim() : 0;
  spec.acoustic_dim = cfg.features_n_ceps;

  AmConfig acfg;
  acfg.arch = ParseAmArch(cfg.am_arch);
  acfg.n_layers = cfg.am_layers;
  acfg.hidden = cfg.am_hidden;
  acfg.bottleneck = cfg.am_bottleneck;
  acfg.final_bottleneck = cfg.am_final_bottleneck;
  acfg.n_states = cfg.NumStates();
  acfg.bypass_scale = cfg.am_bypass_scale;
  acfg.conv_filters = cfg.ConvFilters();
  am_ = std::make_unique<AcousticModel>(acfg, spec, &params_, &rng);
}

JointModel::UttForward JointModel::Forward(const Tensor &x_nsy,
                                           const Tensor *y_clean_target,
                                           const Tensor *y_nse_target) const {
  UttForward out;
  ValuePtr x = Constant(x_nsy);
  if (mode_ == TrainMode::kBaseline) {
    out.logits = am_->Forward(x);
    return out;
  }
  ValuePtr stream_enh, stream_nse;
  if (mode_ == TrainMode::kProposed) {
    SenanModel::Output senan_out = senan_->Forward(x);
    out.y_enh = senan_out.enh;
    out.y_nse = senan_out.nse;
    stream_enh = senan_out.enh;
    stream_nse = nse_enabled_ ? senan_out.nse : nullptr;
  } else {  // oracle: ground-truth features replace the network estimates
    SENAN_CHECK(y_clean_target != nullptr &&
                    (!nse_enabled_ || y_nse_target != nullptr),
                ErrorCode::kInvalidConfig,
                "oracle mode needs clean and noise targets");
    stream_enh = Constant(*y_clean_target);
    stream_nse = nse_enabled_ ? Constant(*y_nse_target) : nullptr;
  }
  ValuePtr x_enh = agg_enh_->Apply(stream_enh);
  ValuePtr x_nse = stream_nse ? agg_nse_->Apply(stream_nse) : nullptr;
  out.logits = am_->Forward(BuildInput(x, x_enh, x_nse));
  return out;
}

}  // namespace senan
