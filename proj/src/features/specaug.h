// features/specaug.h

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

#ifndef SENAN_FEATURES_SPECAUG_H_
#define SENAN_FEATURES_SPECAUG_H_

#include <vector>

#include "features/mfcc.h"
#include "util/rng.h"

namespace senan {

struct SpecAugConfig {
  int n_time_masks = 2;
  int max_time_width = 20;
  int n_feat_masks = 2;
  int max_feat_width = 8;
};

struct MaskBand {
  bool time_axis;  // false: feature axis
  int begin;
  int width;
};

// Temporal and feature-level masking. Each mask zero-fills a contiguous band
// of width uniform in [0, max]; the fill value is the per-utterance feature
// mean of the masked row/column. The input matrix is left unmodified.
FeatureMatrix SpecAugment(const FeatureMatrix &f, const SpecAugConfig &cfg,
                          Rng *rng);

// Deterministic mask application used by SpecAugment and directly testable.
FeatureMatrix ApplyMasks(const FeatureMatrix &f,
                         const std::vector<MaskBand> &masks);

}  // namespace senan

#endif  // SENAN_FEATURES_SPECAUG_H_
