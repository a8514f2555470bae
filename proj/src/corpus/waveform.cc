// corpus/waveform.cc

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

#include "corpus/waveform.h"

#include <cmath>
#include <fstream>

#include "util/error.h"
#include "util/io.h"

namespace senan {

double SignalPower(const Waveform &w) {
  if (w.samples.empty()) return 0.0;
  double s = 0.0;
  for (double v : w.samples) s += v * v;
  return s / static_cast<double>(w.samples.size());
}

double Dot(const Waveform &a, const Waveform &b) {
  SENAN_CHECK(a.samples.size() == b.samples.size(), ErrorCode::kLengthMismatch,
              "waveform lengths differ");
  double s = 0.0;
  for (size_t i = 0; i < a.samples.size(); ++i) s += a.samples[i] * b.samples[i];
  return s;
}

NoiseFit DeriveNoise(const Waveform &noisy, const Waveform &clean) {
  SENAN_CHECK(noisy.samples.size() == clean.samples.size(),
              ErrorCode::kLengthMismatch, "waveform lengths differ");
  double cc = Dot(clean, clean);
  SENAN_CHECK(cc > 0.0, ErrorCode::kZeroReferenceSignal,
              "clean reference is identically zero");
  NoiseFit fit;
  fit.gain = Dot(noisy, clean) / cc;
  fit.noise.sample_rate = noisy.sample_rate;
  fit.noise.samples.resize(noisy.samples.size());
  for (size_t i = 0; i < noisy.samples.size(); ++i)
    fit.noise.samples[i] = noisy.samples[i] - fit.gain * clean.samples[i];
  return fit;
}

double SnrGain(const Waveform &clean, const Waveform &noise, double snr_db) {
  double p_noise = SignalPower(noise);
  SENAN_CHECK(p_noise > 0.0, ErrorCode::kZeroNoiseSignal,
              "noise has zero power");
  double p_clean = SignalPower(clean);
  return std::sqrt(p_clean / (p_noise * std::pow(10.0, snr_db / 10.0)));
}

Waveform MixAtSnr(const Waveform &clean, const Waveform &noise,
                  double snr_db) {
  SENAN_CHECK(clean.samples.size() == noise.samples.size(),
              ErrorCode::kLengthMismatch, "waveform lengths differ");
  double a = SnrGain(clean, noise, snr_db);
  Waveform out = clean;
  for (size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] += a * noise.samples[i];
  return out;
}

double MeasureSnrDb(const Waveform &clean, const Waveform &noise) {
  return 10.0 * std::log10(SignalPower(clean) / SignalPower(noise));
}

Waveform VolumePerturb(const Waveform &w, double factor) {
  SENAN_CHECK(factor > 0.0, ErrorCode::kInvalidFactor,
              "volume factor must be positive");
  Waveform out = w;
  for (double &v : out.samples) v *= factor;
  return out;
}

Waveform SpeedPerturb(const Waveform &w, double factor) {
  SENAN_CHECK(factor >= 0.5 && factor <= 2.0, ErrorCode::kInvalidFactor,
              "speed factor must lie in [0.5, 2.0]");
  int64_t n = w.NumSamples();
  int64_t out_n = static_cast<int64_t>(
      std::llround(static_cast<double>(n) / factor));
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(static_cast<size_t>(out_n));
  for (int64_t i = 0; i < out_n; ++i) {
    double src = static_cast<double>(i) * factor;
    if (src >= static_cast<double>(n - 1)) {
      out.samples[static_cast<size_t>(i)] = w.samples[static_cast<size_t>(n - 1)];
      continue;
    }
    int64_t lo = static_cast<int64_t>(src);
    double frac = src - static_cast<double>(lo);
    out.samples[static_cast<size_t>(i)] =
        (1.0 - frac) * w.samples[static_cast<size_t>(lo)] +
        frac * w.samples[static_cast<size_t>(lo + 1)];
  }
  return out;
}

Waveform OrthogonalizeAgainst(const Waveform &w, const Waveform &reference) {
  double rr = Dot(reference, reference);
  SENAN_CHECK(rr > 0.0, ErrorCode::kZeroReferenceSignal,
              "reference is identically zero");
  double coef = Dot(w, reference) / rr;
  Waveform out = w;
  for (size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] -= coef * reference.samples[i];
  return out;
}

void SaveWaveform(const std::string &path, const Waveform &w) {
  std::ofstream os(path, std::ios::binary);
  if (!os) ThrowError(ErrorCode::kIoError, "cannot write waveform: " + path);
  for (double v : w.samples) WriteLe<float>(os, static_cast<float>(v));
  if (!os) ThrowError(ErrorCode::kIoError, "waveform write failed: " + path);
  WriteTextFile(path + ".meta",
                "sample_rate=" + std::to_string(w.sample_rate) + "\n");
}

Waveform LoadWaveform(const std::string &path) {
  Waveform w;
  std::string meta = ReadTextFile(path + ".meta");
  auto pos = meta.find("sample_rate=");
  SENAN_CHECK(pos != std::string::npos, ErrorCode::kIoError,
              "waveform sidecar missing sample_rate: " + path);
  w.sample_rate = std::stoi(meta.substr(pos + 12));
  std::ifstream is(path, std::ios::binary);
  if (!is) ThrowError(ErrorCode::kIoError, "cannot read waveform: " + path);
  is.seekg(0, std::ios::end);
  auto bytes = is.tellg();
  is.seekg(0);
  SENAN_CHECK(bytes % 4 == 0, ErrorCode::kIoError,
              "waveform file size not a multiple of 4: " + path);
  size_t n = static_cast<size_t>(bytes) / 4;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i)
    w.samples[i] = static_cast<double>(ReadLe<float>(is));
  return w;
}

}  // namespace senan
