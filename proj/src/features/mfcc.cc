// features/mfcc.cc

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

#include "features/mfcc.h"

#include <cmath>

#include "features/fft.h"
#include "util/error.h"

namespace senan {

void FeatureConfig::Validate() const {
  SENAN_CHECK(n_ceps <= n_mels, ErrorCode::kInvalidConfig,
              "n_ceps must not exceed n_mels");
  SENAN_CHECK(frame_ms > hop_ms && hop_ms > 0, ErrorCode::kInvalidConfig,
              "frame_ms must exceed hop_ms");
  SENAN_CHECK(n_mels >= 1 && n_ceps >= 1 && spk_dim >= 1,
              ErrorCode::kInvalidConfig, "bad feature dimensions");
}

double MelScale(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double InvMelScale(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<std::vector<double>> FrameSignal(const Waveform &w,
                                             const FeatureConfig &cfg) {
  cfg.Validate();
  int frame_len = cfg.frame_ms * w.sample_rate / 1000;
  int hop = cfg.hop_ms * w.sample_rate / 1000;
  int64_t n = w.NumSamples();
  SENAN_CHECK(n >= frame_len, ErrorCode::kTooShort,
              "waveform shorter than one frame");
  int64_t t_frames = (n - frame_len) / hop + 1;
  std::vector<std::vector<double>> frames(static_cast<size_t>(t_frames));
  std::vector<double> window(static_cast<size_t>(frame_len));
  for (int i = 0; i < frame_len; ++i)
    window[static_cast<size_t>(i)] =
        0.54 - 0.46 * std::cos(2.0 * M_PI * i / (frame_len - 1));
  for (int64_t t = 0; t < t_frames; ++t) {
    auto &frame = frames[static_cast<size_t>(t)];
    frame.resize(static_cast<size_t>(frame_len));
    for (int i = 0; i < frame_len; ++i)
      frame[static_cast<size_t>(i)] =
          w.samples[static_cast<size_t>(t * hop + i)] *
          window[static_cast<size_t>(i)];
  }
  return frames;
}

MfccComputer::MfccComputer(const FeatureConfig &cfg, int sample_rate)
    : cfg_(cfg), sample_rate_(sample_rate) {
  cfg_.Validate();
  frame_len_ = cfg_.frame_ms * sample_rate_ / 1000;
  fft_size_ = NextPowerOfTwo(frame_len_);
  int n_bins = fft_size_ / 2 + 1;
  double nyquist = sample_rate_ / 2.0;
  double mel_lo = MelScale(20.0), mel_hi = MelScale(nyquist);
  // triangular, area-unnormalized filters with peaks equally spaced in mel
  std::vector<double> centers_hz(static_cast<size_t>(cfg_.n_mels) + 2);
  for (int m = 0; m < cfg_.n_mels + 2; ++m)
    centers_hz[static_cast<size_t>(m)] = InvMelScale(
        mel_lo + (mel_hi - mel_lo) * m / (cfg_.n_mels + 1));
  double hz_per_bin = static_cast<double>(sample_rate_) / fft_size_;
  mel_filters_.resize(static_cast<size_t>(cfg_.n_mels));
  for (int m = 0; m < cfg_.n_mels; ++m) {
    double left = centers_hz[static_cast<size_t>(m)];
    double center = centers_hz[static_cast<size_t>(m + 1)];
    double right = centers_hz[static_cast<size_t>(m + 2)];
    int first = -1;
    std::vector<double> weights;
    for (int k = 0; k < n_bins; ++k) {
      double hz = k * hz_per_bin;
      double wgt = 0.0;
      if (hz > left && hz < right)
        wgt = hz <= center ? (hz - left) / (center - left)
                           : (right - hz) / (right - center);
      if (wgt > 0.0) {
        if (first < 0) first = k;
        weights.push_back(wgt);
      } else if (first >= 0) {
        break;
      }
    }
    SENAN_CHECK(first >= 0, ErrorCode::kInvalidConfig,
                "empty mel filter; too many mel channels for FFT size");
    mel_filters_[static_cast<size_t>(m)] = {first, std::move(weights)};
  }
  // orthonormal DCT-II, laid out for row-vector multiplication
  dct_ = Tensor({cfg_.n_mels, cfg_.n_ceps});
  for (int m = 0; m < cfg_.n_mels; ++m)
    for (int k = 0; k < cfg_.n_ceps; ++k) {
      double w = k == 0 ? std::sqrt(1.0 / cfg_.n_mels)
                        : std::sqrt(2.0 / cfg_.n_mels);
      dct_.At(m, k) =
          w * std::cos(M_PI * k * (2.0 * m + 1.0) / (2.0 * cfg_.n_mels));
    }
}

FeatureMatrix MfccComputer::Compute(const Waveform &w,
                                    FeatureKind kind) const {
  SENAN_CHECK(w.sample_rate == sample_rate_, ErrorCode::kInvalidConfig,
              "sample rate differs from the computer's");
  auto frames = FrameSignal(w, cfg_);
  int t_frames = static_cast<int>(frames.size());
  FeatureMatrix f;
  f.kind = kind;
  f.data = Tensor({t_frames, cfg_.n_ceps});
  std::vector<double> logmel(static_cast<size_t>(cfg_.n_mels));
  for (int t = 0; t < t_frames; ++t) {
    auto power = PowerSpectrum(frames[static_cast<size_t>(t)], fft_size_);
    for (int m = 0; m < cfg_.n_mels; ++m) {
      const auto &[first, weights] = mel_filters_[static_cast<size_t>(m)];
      double e = 0.0;
      for (size_t k = 0; k < weights.size(); ++k)
        e += weights[k] * power[static_cast<size_t>(first) + k];
      logmel[static_cast<size_t>(m)] = std::log(std::max(e, cfg_.log_floor));
    }
    for (int k = 0; k < cfg_.n_ceps; ++k) {
      double c = 0.0;
      for (int m = 0; m < cfg_.n_mels; ++m)
        c += logmel[static_cast<size_t>(m)] * dct_.At(m, k);
      f.data.At(t, k) = c;
    }
  }
  return f;
}

FeatureMatrix Mfcc(const Waveform &w, const FeatureConfig &cfg,
                   FeatureKind kind) {
  return MfccComputer(cfg, w.sample_rate).Compute(w, kind);
}

FeatureMatrix Cmn(const FeatureMatrix &f) {
  FeatureMatrix out = f;
  int t_frames = out.Frames(), d = out.Dims();
  for (int j = 0; j < d; ++j) {
    double mean = 0.0;
    for (int t = 0; t < t_frames; ++t) mean += out.data.At(t, j);
    mean /= t_frames;
    if (mean != 0.0)
      for (int t = 0; t < t_frames; ++t) out.data.At(t, j) -= mean;
    // Fold the rounding residue of the subtraction into the last frame so
    // the column sum is exactly zero and a second pass is a no-op.
    double partial = 0.0;
    for (int t = 0; t < t_frames - 1; ++t) partial += out.data.At(t, j);
    out.data.At(t_frames - 1, j) = 0.0 - partial;
  }
  return out;
}

FeatureMatrix AssembleNoisyFeatures(const FeatureMatrix &mfcc,
                                    const std::vector<double> &spk) {
  int t_frames = mfcc.Frames(), d = mfcc.Dims();
  int spk_dim = static_cast<int>(spk.size());
  FeatureMatrix out;
  out.kind = FeatureKind::kNoisy;
  out.data = Tensor({t_frames, d + spk_dim});
  for (int t = 0; t < t_frames; ++t) {
    for (int j = 0; j < d; ++j) out.data.At(t, j) = mfcc.data.At(t, j);
    for (int j = 0; j < spk_dim; ++j)
      out.data.At(t, d + j) = spk[static_cast<size_t>(j)];
  }
  return out;
}

}  // namespace senan
