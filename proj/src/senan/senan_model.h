// senan/senan_model.h

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

#ifndef SENAN_SENAN_SENAN_MODEL_H_
#define SENAN_SENAN_SENAN_MODEL_H_

#include <string>
#include <vector>

#include "numerics/parameter.h"

namespace senan {

struct SenanConfig {
  int input_dim = 48;   // n_ceps + spk_dim
  int output_dim = 40;  // n_ceps
  int h_first = 64;
  int h_last = 128;

  void Validate() const;
};

// Multi-task autoencoder decomposing each noisy frame into an enhanced
// speech estimate and a noise estimate: five shared affine+ReLU layers whose
// widths grow linearly from h_first to h_last, followed by one linear head
// per task. Frame-independent by construction.
class SenanModel {
 public:
  SenanModel(const SenanConfig &cfg, ParameterSet *params, Rng *rng,
             const std::string &prefix = "senan");

  struct Output {
    ValuePtr enh;  // T x output_dim
    ValuePtr nse;  // T x output_dim
  };
  Output Forward(const ValuePtr &x_nsy) const;

  static std::vector<int> HiddenSizes(int h_first, int h_last);

 private:
  SenanConfig cfg_;
  std::vector<ValuePtr> trunk_w_, trunk_b_;
  ValuePtr head_enh_w_, head_enh_b_;
  ValuePtr head_nse_w_, head_nse_b_;
};

// Sum over frames of squared Euclidean distance to the target (no
// averaging). Used with the clean-speech target for the enhanced head and
// the true-noise target for the noise head.
ValuePtr MseLoss(const ValuePtr &y, const Tensor &target);

}  // namespace senan

#endif  // SENAN_SENAN_SENAN_MODEL_H_
