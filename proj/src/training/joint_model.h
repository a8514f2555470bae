// training/joint_model.h

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

#ifndef SENAN_TRAINING_JOINT_MODEL_H_
#define SENAN_TRAINING_JOINT_MODEL_H_

#include <memory>
#include <optional>

#include "aggregation/aggregation.h"
#include "am/acoustic_model.h"
#include "cli/experiment_config.h"
#include "senan/senan_model.h"

namespace senan {

// The full per-frame network as wired for one of the three operating modes:
//   baseline - the acoustic model sees the noisy stream only;
//   proposed - the enhancement network decomposes the noisy frames and the
//              aggregated enhanced/noise streams join the input;
//   oracle   - the enhancement network is removed and the streams are built
//              from the clean-speech and true-noise targets instead.
class JointModel {
 public:
  JointModel(const ExperimentConfig &cfg, TrainMode mode);

  struct UttForward {
    ValuePtr logits;  // T x K
    ValuePtr y_enh;   // network estimates; null outside proposed mode
    ValuePtr y_nse;
  };
  // Targets are required in oracle mode and unused in baseline mode.
  UttForward Forward(const Tensor &x_nsy, const Tensor *y_clean_target,
                     const Tensor *y_nse_target) const;

  ParameterSet &params() { return params_; }
  const ParameterSet &params() const { return params_; }
  TrainMode mode() const { return mode_; }
  bool nse_enabled() const { return nse_enabled_; }
  const AcousticModel &am() const { return *am_; }

 private:
  TrainMode mode_;
  bool nse_enabled_;
  ParameterSet params_;
  std::unique_ptr<SenanModel> senan_;        // proposed only
  std::unique_ptr<Aggregator> agg_enh_;      // proposed and oracle
  std::unique_ptr<Aggregator> agg_nse_;
  std::unique_ptr<AcousticModel> am_;
};

}  // namespace senan

#endif  // SENAN_TRAINING_JOINT_MODEL_H_
