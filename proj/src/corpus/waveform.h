// corpus/waveform.h

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

#ifndef SENAN_CORPUS_WAVEFORM_H_
#define SENAN_CORPUS_WAVEFORM_H_

#include <cstdint>
#include <string>
#include <vector>

namespace senan {

struct Waveform {
  int sample_rate = 16000;
  std::vector<double> samples;

  int64_t NumSamples() const { return static_cast<int64_t>(samples.size()); }
};

double SignalPower(const Waveform &w);  // mean squared amplitude
double Dot(const Waveform &a, const Waveform &b);

// Least-squares volume fit of `clean` against `noisy` and the residual:
// gain = <noisy, clean> / <clean, clean>, noise = noisy - gain * clean.
struct NoiseFit {
  double gain;
  Waveform noise;
};
NoiseFit DeriveNoise(const Waveform &noisy, const Waveform &clean);

// Scale factor a with which clean + a * noise meets the requested SNR.
double SnrGain(const Waveform &clean, const Waveform &noise, double snr_db);
Waveform MixAtSnr(const Waveform &clean, const Waveform &noise, double snr_db);

// Measured SNR in dB between a signal and a noise waveform.
double MeasureSnrDb(const Waveform &clean, const Waveform &noise);

Waveform VolumePerturb(const Waveform &w, double factor);
// Linear-interpolation resampling to length round(len / factor).
Waveform SpeedPerturb(const Waveform &w, double factor);

// Removes the component of `w` parallel to `reference`.
Waveform OrthogonalizeAgainst(const Waveform &w, const Waveform &reference);

// Raw little-endian float32 samples plus a text sidecar `<path>.meta`
// holding `sample_rate=<hz>`.
void SaveWaveform(const std::string &path, const Waveform &w);
Waveform LoadWaveform(const std::string &path);

}  // namespace senan

#endif  // SENAN_CORPUS_WAVEFORM_H_
