// features/mfcc.h

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

#ifndef SENAN_FEATURES_MFCC_H_
#define SENAN_FEATURES_MFCC_H_

#include <vector>

#include "corpus/waveform.h"
#include "numerics/tensor.h"

namespace senan {

enum class FeatureKind : int {
  kNoisy = 0,
  kClean = 1,
  kNoise = 2,
  kEnhanced = 3,
  kNoiseAware = 4,
  kInput = 5,
};

struct FeatureMatrix {
  Tensor data;  // frames x dims
  FeatureKind kind = FeatureKind::kNoisy;

  int Frames() const { return data.Rows(); }
  int Dims() const { return data.Cols(); }
};

struct FeatureConfig {
  int frame_ms = 25;
  int hop_ms = 10;
  int n_mels = 40;
  int n_ceps = 40;
  int spk_dim = 8;  // i-vector stand-in dimension
  double log_floor = 1e-10;
  uint64_t spk_seed = 9001;

  void Validate() const;
};

// 25 ms / 10 ms Hamming-windowed frames; T = floor((N - L) / H) + 1.
std::vector<std::vector<double>> FrameSignal(const Waveform &w,
                                             const FeatureConfig &cfg);

// Per frame: power spectrum (FFT size = next power of two >= frame length)
// -> triangular mel filterbank -> floored natural log -> orthonormal DCT-II.
class MfccComputer {
 public:
  MfccComputer(const FeatureConfig &cfg, int sample_rate);
  FeatureMatrix Compute(const Waveform &w, FeatureKind kind) const;

 private:
  FeatureConfig cfg_;
  int sample_rate_;
  int frame_len_;
  int fft_size_;
  // filter bin weights per mel channel as (first_bin, weights)
  std::vector<std::pair<int, std::vector<double>>> mel_filters_;
  Tensor dct_;  // n_mels x n_ceps, multiplied as logmel_row * dct_
};

FeatureMatrix Mfcc(const Waveform &w, const FeatureConfig &cfg,
                   FeatureKind kind);

// Utterance-level mean normalization; column means become (FP-)zero and a
// second application is a bitwise no-op.
FeatureMatrix Cmn(const FeatureMatrix &f);

// Noisy MFCC rows with the speaker vector appended to each frame.
FeatureMatrix AssembleNoisyFeatures(const FeatureMatrix &mfcc,
                                    const std::vector<double> &spk);

double MelScale(double hz);
double InvMelScale(double mel);

}  // namespace senan

#endif  // SENAN_FEATURES_MFCC_H_
