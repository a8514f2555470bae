// corpus/corpus.h

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

#ifndef SENAN_CORPUS_CORPUS_H_
#define SENAN_CORPUS_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "corpus/waveform.h"
#include "util/rng.h"

namespace senan {

// Spectral prototype used to render one phone: a fixed set of sinusoid
// frequencies and amplitudes, drawn once per inventory.
struct PhonePrototype {
  std::vector<double> freqs_hz;
  std::vector<double> amps;
};

struct PhoneInventory {
  int states_per_phone = 1;
  std::vector<PhonePrototype> prototypes;

  int NumPhones() const { return static_cast<int>(prototypes.size()); }
  int NumStates() const { return NumPhones() * states_per_phone; }
  int StateOf(int phone, int sub) const {
    return phone * states_per_phone + sub;
  }
  int PhoneOfState(int state) const { return state / states_per_phone; }

  static PhoneInventory MakeDefault(int num_phones, int states_per_phone,
                                    uint64_t seed);
};

struct Utterance {
  std::string id;
  std::string speaker;
  Waveform clean;
  Waveform noise;
  Waveform noisy;
  std::vector<int> transcript;  // phone ids
  std::vector<int> alignment;   // per-frame state ids
  double snr_db = 0.0;

  // State segment layout in samples, kept in memory for alignment
  // regeneration under perturbation; not serialized.
  std::vector<int> seg_states;
  std::vector<int64_t> seg_ends;
};

enum class Split { kTrain, kTest };

struct Corpus {
  std::vector<Utterance> utterances;
  Split split = Split::kTrain;
  uint64_t seed = 0;
};

struct CorpusConfig {
  int num_utterances = 200;
  int num_speakers = 10;
  int num_phones = 10;
  int states_per_phone = 1;
  double snr_min_db = 0.0;
  double snr_max_db = 10.0;
  int min_phones = 3;
  int max_phones = 10;
  double min_segment_ms = 80.0;
  double max_segment_ms = 200.0;
  int noise_kinds = 3;  // 1 white, 2 +hum, 3 +modulated
  int sample_rate = 16000;
  int frame_ms = 25;  // framing mirror of the feature front end, for labels
  int hop_ms = 10;
  uint64_t seed = 1234;

  void Validate() const;  // throws InvalidConfig
};

// Renders a fully synthetic paired corpus: random phone sequences as
// sinusoid segments, additive noise mixed at a uniform-random SNR, exact
// frame-state alignment from the segment boundaries. The stored noise is
// orthogonalized against the clean signal before scaling, so the volume fit
// of DeriveNoise recovers gain 1 and the stored noise exactly.
Corpus GenerateCorpus(const CorpusConfig &cfg, Split split);

// Frame labels from segment boundaries: label of frame t is the state whose
// segment contains the frame center t * hop + frame_len / 2.
std::vector<int> AlignmentFromSegments(const std::vector<int> &seg_states,
                                       const std::vector<int64_t> &seg_ends,
                                       int64_t num_samples, int frame_len,
                                       int hop);

// Original + one speed-perturbed + one volume-perturbed copy per utterance.
// Speed variants re-mix noise at the original SNR against the resampled
// clean signal and regenerate the alignment from scaled boundaries.
Corpus TripleCorpus(const Corpus &corpus, const CorpusConfig &cfg);

// Manifest + raw waveform + alignment files under `dir`.
void SaveCorpus(const Corpus &corpus, const std::string &dir);
Corpus LoadCorpus(const std::string &dir, Split split);

std::string SplitName(Split split);

}  // namespace senan

#endif  // SENAN_CORPUS_CORPUS_H_
