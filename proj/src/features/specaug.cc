// features/specaug.cc

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

#include "features/specaug.h"

#include "util/error.h"

namespace senan {

FeatureMatrix ApplyMasks(const FeatureMatrix &f,
                         const std::vector<MaskBand> &masks) {
  int t_frames = f.Frames(), d = f.Dims();
  // column means, the fill values
  std::vector<double> mean(static_cast<size_t>(d), 0.0);
  for (int t = 0; t < t_frames; ++t)
    for (int j = 0; j < d; ++j) mean[static_cast<size_t>(j)] += f.data.At(t, j);
  for (auto &m : mean) m /= t_frames;

  FeatureMatrix out = f;
  for (const MaskBand &mask : masks) {
    int extent = mask.time_axis ? t_frames : d;
    SENAN_CHECK(mask.width >= 0 && mask.begin >= 0 &&
                    mask.begin + mask.width <= extent,
                ErrorCode::kInvalidWidth, "mask band out of range");
    if (mask.time_axis) {
      for (int t = mask.begin; t < mask.begin + mask.width; ++t)
        for (int j = 0; j < d; ++j)
          out.data.At(t, j) = mean[static_cast<size_t>(j)];
    } else {
      for (int t = 0; t < t_frames; ++t)
        for (int j = mask.begin; j < mask.begin + mask.width; ++j)
          out.data.At(t, j) = mean[static_cast<size_t>(j)];
    }
  }
  return out;
}

FeatureMatrix SpecAugment(const FeatureMatrix &f, const SpecAugConfig &cfg,
                          Rng *rng) {
  int t_frames = f.Frames(), d = f.Dims();
  SENAN_CHECK(cfg.n_time_masks == 0 || cfg.max_time_width <= t_frames,
              ErrorCode::kInvalidWidth, "time mask width exceeds frame count");
  SENAN_CHECK(cfg.n_feat_masks == 0 || cfg.max_feat_width <= d,
              ErrorCode::kInvalidWidth,
              "feature mask width exceeds dimension count");
  std::vector<MaskBand> masks;
  for (int i = 0; i < cfg.n_time_masks; ++i) {
    int w = rng->UniformInt(0, cfg.max_time_width);
    int begin = w < t_frames ? rng->UniformInt(0, t_frames - w) : 0;
    masks.push_back({true, begin, w});
  }
  for (int i = 0; i < cfg.n_feat_masks; ++i) {
    int w = rng->UniformInt(0, cfg.max_feat_width);
    int begin = w < d ? rng->UniformInt(0, d - w) : 0;
    masks.push_back({false, begin, w});
  }
  return ApplyMasks(f, masks);
}

}  // namespace senan
