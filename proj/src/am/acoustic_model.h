// am/acoustic_model.h

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

#ifndef SENAN_AM_ACOUSTIC_MODEL_H_
#define SENAN_AM_ACOUSTIC_MODEL_H_

#include <string>
#include <vector>

#include "features/mfcc.h"
#include "numerics/parameter.h"

namespace senan {

enum class AmArch { kTdnnf, kCnnTdnnf };

AmArch ParseAmArch(const std::string &name);
std::string AmArchName(AmArch arch);

// Dimensions of the three concatenated input streams.
struct InputFrameSpec {
  int d_nsy = 0;
  int d_enh = 0;  // 0 when the stream is disabled
  int d_nse = 0;
  int acoustic_dim = 0;  // leading MFCC dims of the noisy stream (CNN grid)

  int TotalDim() const { return d_nsy + d_enh + d_nse; }
};

struct AmConfig {
  AmArch arch = AmArch::kTdnnf;
  int n_layers = 4;  // factorized time-delay layers
  int hidden = 64;
  int bottleneck = 16;
  int final_bottleneck = 24;
  int n_states = 10;
  double bypass_scale = 0.66;
  std::vector<int> conv_filters = {4, 8};
  std::vector<int> time_offsets = {-1, 0, 1};
  bool renorm = true;  // off: structural tests of pure splice locality

  void Validate() const;
};

// Per-frame concatenation noisy (+) enhanced (+) noise-aware; disabled
// streams are passed as nullptr and the op reduces accordingly.
ValuePtr BuildInput(const ValuePtr &x_nsy, const ValuePtr &x_enh,
                    const ValuePtr &x_nse);

// Factorized time-delay stack: per layer, frames are spliced at the time
// offsets (clamped), reduced through a semi-orthogonally constrained linear
// bottleneck, expanded by an affine layer, passed through ReLU and a
// per-dimension renorm (unit RMS over the utterance), then mixed with the
// layer input when dimensions match. The CNN variant runs 3x3 convolutions
// over the time x coefficient grid of the acoustic dims first; the remaining
// dims join after the stack.
class AcousticModel {
 public:
  AcousticModel(const AmConfig &cfg, const InputFrameSpec &spec,
                ParameterSet *params, Rng *rng,
                const std::string &prefix = "am");

  ValuePtr Forward(const ValuePtr &x_in) const;  // T x n_states logits

  const AmConfig &config() const { return cfg_; }
  const InputFrameSpec &input_spec() const { return spec_; }

 private:
  struct TdnnfLayer {
    ValuePtr linear;  // [3*d_in x bottleneck], semi-orthogonal
    ValuePtr affine;  // [bottleneck x hidden]
    ValuePtr bias;
    bool bypass;
  };
  struct ConvLayer {
    ValuePtr weight;  // [9*C_in x filters]
    ValuePtr bias;
    int c_in;
    int filters;
  };

  AmConfig cfg_;
  InputFrameSpec spec_;
  std::vector<ConvLayer> conv_;
  std::vector<TdnnfLayer> layers_;
  ValuePtr final_linear_;  // [hidden x final_bottleneck], semi-orthogonal
  ValuePtr out_w_;         // [final_bottleneck x n_states]
  ValuePtr out_b_;
};

// Per-dimension scale to unit root-mean-square over the rows. The epsilon
// bounds the gain on near-dead dimensions.
ValuePtr BatchRenorm(const ValuePtr &x, double eps = 1e-3);

// 3x3 patch extraction over a T x (H*C) grid with clamp-to-edge, giving
// [T*H x 9*C]; convolution is a matmul against this.
ValuePtr Im2Col3x3(const ValuePtr &x, int height, int channels);

}  // namespace senan

#endif  // SENAN_AM_ACOUSTIC_MODEL_H_
