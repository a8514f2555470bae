// lfmmi/mmi_loss.h

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

#ifndef SENAN_LFMMI_MMI_LOSS_H_
#define SENAN_LFMMI_MMI_LOSS_H_

#include "lfmmi/forward_backward.h"
#include "numerics/autodiff.h"

namespace senan {

// Mutual-information score F = logZ_num - logZ_den with logits used directly
// as log acoustic scores. The gradient into the logits is the occupancy
// difference gamma_num - gamma_den, registered with the differentiation
// graph so Backward() propagates it further down. Throws NoPath when either
// graph admits no path.
ValuePtr MmiScore(const ValuePtr &logits, const Graph &num, const Graph &den);

}  // namespace senan

#endif  // SENAN_LFMMI_MMI_LOSS_H_
