// training/losses.h

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

#ifndef SENAN_TRAINING_LOSSES_H_
#define SENAN_TRAINING_LOSSES_H_

#include <vector>

#include "numerics/autodiff.h"

namespace senan {

struct LossWeights {
  double alpha = 5.0;
  double beta = 0.2;
};

// Frame cross entropy against the reference state sequence, summed (not
// averaged) over frames: -sum_t log softmax(logits)[t][s_t].
ValuePtr CeLoss(const ValuePtr &logits, const std::vector<int> &alignment);

// L = alpha * ce - fmmi + beta * (l_enh + l_nse).
ValuePtr JointLoss(const ValuePtr &ce, const ValuePtr &fmmi,
                   const ValuePtr &l_enh, const ValuePtr &l_nse,
                   const LossWeights &w);

// Exponential interpolation lr_initial * (lr_final / lr_initial)^(step/total).
double LrAt(int64_t step, int64_t total_steps, double lr_initial,
            double lr_final);

}  // namespace senan

#endif  // SENAN_TRAINING_LOSSES_H_
