// corpus/corpus.cc

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

#include "corpus/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "util/error.h"
#include "util/io.h"

namespace senan {

namespace {

constexpr double kCleanRms = 0.1;
constexpr double kExcitationLevel = 0.004;

double SpeakerFreqMult(const std::string &speaker) {
  Rng rng(DeriveSeed(0x5eedbeef, speaker));
  return rng.Uniform(0.92, 1.08);
}

}  // namespace

PhoneInventory PhoneInventory::MakeDefault(int num_phones,
                                           int states_per_phone,
                                           uint64_t seed) {
  PhoneInventory inv;
  inv.states_per_phone = states_per_phone;
  Rng rng(DeriveSeed(seed, "phone-inventory"));
  inv.prototypes.resize(static_cast<size_t>(num_phones));
  for (auto &proto : inv.prototypes) {
    int n_partials = rng.UniformInt(2, 4);
    for (int i = 0; i < n_partials; ++i) {
      proto.freqs_hz.push_back(rng.Uniform(200.0, 3600.0));
      proto.amps.push_back(rng.Uniform(0.4, 1.0));
    }
  }
  return inv;
}

void CorpusConfig::Validate() const {
  SENAN_CHECK(num_utterances >= 1, ErrorCode::kInvalidConfig,
              "num_utterances must be >= 1");
  SENAN_CHECK(num_speakers >= 1, ErrorCode::kInvalidConfig,
              "num_speakers must be >= 1");
  SENAN_CHECK(num_phones >= 2, ErrorCode::kInvalidConfig,
              "need at least 2 phones");
  SENAN_CHECK(states_per_phone >= 1, ErrorCode::kInvalidConfig,
              "states_per_phone must be >= 1");
  SENAN_CHECK(snr_min_db >= 0.0 && snr_max_db <= 40.0 &&
                  snr_min_db <= snr_max_db,
              ErrorCode::kInvalidConfig, "snr range must lie within [0, 40]");
  SENAN_CHECK(min_phones >= 1 && min_phones <= max_phones,
              ErrorCode::kInvalidConfig, "bad phone count range");
  SENAN_CHECK(min_segment_ms > 0.0 && min_segment_ms <= max_segment_ms,
              ErrorCode::kInvalidConfig, "bad segment duration range");
  SENAN_CHECK(noise_kinds >= 1 && noise_kinds <= 3, ErrorCode::kInvalidConfig,
              "noise_kinds must be 1..3");
  SENAN_CHECK(sample_rate > 0 && frame_ms > hop_ms && hop_ms > 0,
              ErrorCode::kInvalidConfig, "bad framing parameters");
  double min_utt_ms = min_phones * min_segment_ms;
  SENAN_CHECK(min_utt_ms >= frame_ms, ErrorCode::kInvalidConfig,
              "utterances shorter than one frame");
}

std::vector<int> AlignmentFromSegments(const std::vector<int> &seg_states,
                                       const std::vector<int64_t> &seg_ends,
                                       int64_t num_samples, int frame_len,
                                       int hop) {
  int64_t t_frames = (num_samples - frame_len) / hop + 1;
  SENAN_CHECK(t_frames >= 1, ErrorCode::kTooShort,
              "waveform shorter than one frame");
  std::vector<int> alignment(static_cast<size_t>(t_frames));
  size_t seg = 0;
  for (int64_t t = 0; t < t_frames; ++t) {
    int64_t center = t * hop + frame_len / 2;
    while (seg + 1 < seg_ends.size() && center >= seg_ends[seg]) ++seg;
    alignment[static_cast<size_t>(t)] = seg_states[seg];
  }
  return alignment;
}

namespace {

Waveform RenderClean(const std::vector<int> &transcript,
                     const PhoneInventory &inv, const CorpusConfig &cfg,
                     double freq_mult, Rng *rng,
                     std::vector<int> *seg_states,
                     std::vector<int64_t> *seg_ends) {
  Waveform w;
  w.sample_rate = cfg.sample_rate;
  double sr = static_cast<double>(cfg.sample_rate);
  for (int phone : transcript) {
    double dur_ms = rng->Uniform(cfg.min_segment_ms, cfg.max_segment_ms);
    int64_t dur = static_cast<int64_t>(std::llround(dur_ms * sr / 1000.0));
    const PhonePrototype &proto = inv.prototypes[static_cast<size_t>(phone)];
    std::vector<double> phases(proto.freqs_hz.size());
    for (auto &p : phases) p = rng->Uniform(0.0, 2.0 * M_PI);
    int64_t start = w.NumSamples();
    int64_t ramp = std::min<int64_t>(static_cast<int64_t>(0.005 * sr), dur / 4);
    for (int64_t i = 0; i < dur; ++i) {
      double t = static_cast<double>(i) / sr;
      double v = 0.0;
      for (size_t k = 0; k < proto.freqs_hz.size(); ++k)
        v += proto.amps[k] *
             std::sin(2.0 * M_PI * proto.freqs_hz[k] * freq_mult * t +
                      phases[k]);
      double env = 1.0;
      if (ramp > 0) {
        if (i < ramp) env = 0.5 - 0.5 * std::cos(M_PI * i / ramp);
        int64_t from_end = dur - 1 - i;
        if (from_end < ramp)
          env = std::min(env, 0.5 - 0.5 * std::cos(M_PI * from_end / ramp));
      }
      w.samples.push_back(env * v);
    }
    // per-state sub-segments of equal length
    int64_t sub = dur / inv.states_per_phone;
    for (int s = 0; s < inv.states_per_phone; ++s) {
      seg_states->push_back(inv.StateOf(phone, s));
      seg_ends->push_back(s + 1 == inv.states_per_phone
                              ? start + dur
                              : start + sub * (s + 1));
    }
  }
  for (double &v : w.samples) v += kExcitationLevel * rng->Gaussian();
  double rms = std::sqrt(SignalPower(w));
  if (rms > 0.0)
    for (double &v : w.samples) v *= kCleanRms / rms;
  return w;
}

Waveform RenderNoise(int kind, int64_t n, int sample_rate, Rng *rng) {
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(static_cast<size_t>(n));
  double sr = static_cast<double>(sample_rate);
  switch (kind) {
    case 0:  // white Gaussian
      for (double &v : w.samples) v = rng->Gaussian();
      break;
    case 1: {  // mains-style harmonic hum, 50 Hz fundamental
      std::vector<double> phases(6);
      for (auto &p : phases) p = rng->Uniform(0.0, 2.0 * M_PI);
      for (int64_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / sr;
        double v = 0.0;
        for (int k = 1; k <= 6; ++k)
          v += std::sin(2.0 * M_PI * 50.0 * k * t + phases[static_cast<size_t>(k - 1)]) / k;
        w.samples[static_cast<size_t>(i)] = v;
      }
      break;
    }
    case 2: {  // amplitude-modulated Gaussian
      double f_mod = rng->Uniform(2.0, 8.0);
      double phase = rng->Uniform(0.0, 2.0 * M_PI);
      for (int64_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / sr;
        double env = 1.0 + 0.8 * std::sin(2.0 * M_PI * f_mod * t + phase);
        w.samples[static_cast<size_t>(i)] = env * rng->Gaussian();
      }
      break;
    }
    default:
      ThrowError(ErrorCode::kInvalidConfig, "unknown noise kind");
  }
  return w;
}

Utterance GenerateUtterance(const CorpusConfig &cfg, const PhoneInventory &inv,
                            Split split, int index) {
  Rng rng(DeriveSeed(DeriveSeed(cfg.seed, SplitName(split)),
                     static_cast<uint64_t>(index)));
  Utterance utt;
  char idbuf[32];
  std::snprintf(idbuf, sizeof(idbuf), "%s%06d",
                split == Split::kTrain ? "tr" : "te", index);
  utt.id = idbuf;
  char spkbuf[16];
  std::snprintf(spkbuf, sizeof(spkbuf), "spk%02d",
                rng.UniformInt(0, cfg.num_speakers - 1));
  utt.speaker = spkbuf;

  int n_phones = rng.UniformInt(cfg.min_phones, cfg.max_phones);
  utt.transcript.resize(static_cast<size_t>(n_phones));
  // Guarantee full phone coverage of the training split.
  utt.transcript[0] = split == Split::kTrain && index < inv.NumPhones()
                          ? index
                          : rng.UniformInt(0, inv.NumPhones() - 1);
  // No adjacent repeats: a phone cannot follow itself with single-state
  // units, and the decoder could not separate a repeat from a longer dwell.
  for (size_t i = 1; i < utt.transcript.size(); ++i) {
    int draw = rng.UniformInt(0, inv.NumPhones() - 2);
    utt.transcript[i] = draw + (draw >= utt.transcript[i - 1] ? 1 : 0);
  }

  utt.clean = RenderClean(utt.transcript, inv, cfg, SpeakerFreqMult(utt.speaker),
                          &rng, &utt.seg_states, &utt.seg_ends);

  int kind = rng.UniformInt(0, cfg.noise_kinds - 1);
  Waveform raw = RenderNoise(kind, utt.clean.NumSamples(), cfg.sample_rate,
                             &rng);
  Waveform orth = OrthogonalizeAgainst(raw, utt.clean);
  utt.snr_db = rng.Uniform(cfg.snr_min_db, cfg.snr_max_db);
  double a = SnrGain(utt.clean, orth, utt.snr_db);
  utt.noise = orth;
  for (double &v : utt.noise.samples) v *= a;
  utt.noisy = utt.clean;
  for (size_t i = 0; i < utt.noisy.samples.size(); ++i)
    utt.noisy.samples[i] += utt.noise.samples[i];

  int frame_len = cfg.frame_ms * cfg.sample_rate / 1000;
  int hop = cfg.hop_ms * cfg.sample_rate / 1000;
  utt.alignment = AlignmentFromSegments(utt.seg_states, utt.seg_ends,
                                        utt.clean.NumSamples(), frame_len, hop);
  return utt;
}

}  // namespace

Corpus GenerateCorpus(const CorpusConfig &cfg, Split split) {
  cfg.Validate();
  PhoneInventory inv =
      PhoneInventory::MakeDefault(cfg.num_phones, cfg.states_per_phone,
                                  cfg.seed);
  Corpus corpus;
  corpus.split = split;
  corpus.seed = cfg.seed;
  corpus.utterances.reserve(static_cast<size_t>(cfg.num_utterances));
  for (int i = 0; i < cfg.num_utterances; ++i)
    corpus.utterances.push_back(GenerateUtterance(cfg, inv, split, i));
  return corpus;
}

Corpus TripleCorpus(const Corpus &corpus, const CorpusConfig &cfg) {
  Corpus out;
  out.split = corpus.split;
  out.seed = corpus.seed;
  int frame_len = cfg.frame_ms * cfg.sample_rate / 1000;
  int hop = cfg.hop_ms * cfg.sample_rate / 1000;
  for (size_t i = 0; i < corpus.utterances.size(); ++i) {
    const Utterance &utt = corpus.utterances[i];
    SENAN_CHECK(!utt.seg_ends.empty(), ErrorCode::kInvalidConfig,
                "augmentation needs in-memory segment boundaries");
    Rng rng(DeriveSeed(DeriveSeed(corpus.seed, "augment"),
                       static_cast<uint64_t>(i)));
    out.utterances.push_back(utt);

    // Speed variant: resample components, re-orthogonalize the noise against
    // the resampled clean signal and re-mix at the original SNR.
    double sp = rng.UniformInt(0, 1) == 0 ? 0.9 : 1.1;
    Utterance spu;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s-sp%.1f", utt.id.c_str(), sp);
    spu.id = buf;
    spu.speaker = utt.speaker;
    spu.transcript = utt.transcript;
    spu.snr_db = utt.snr_db;
    spu.clean = SpeedPerturb(utt.clean, sp);
    Waveform orth = OrthogonalizeAgainst(SpeedPerturb(utt.noise, sp), spu.clean);
    double a = SnrGain(spu.clean, orth, spu.snr_db);
    spu.noise = orth;
    for (double &v : spu.noise.samples) v *= a;
    spu.noisy = spu.clean;
    for (size_t k = 0; k < spu.noisy.samples.size(); ++k)
      spu.noisy.samples[k] += spu.noise.samples[k];
    spu.seg_states = utt.seg_states;
    spu.seg_ends.reserve(utt.seg_ends.size());
    for (int64_t e : utt.seg_ends)
      spu.seg_ends.push_back(std::min<int64_t>(
          spu.clean.NumSamples(),
          static_cast<int64_t>(std::llround(static_cast<double>(e) / sp))));
    spu.seg_ends.back() = spu.clean.NumSamples();
    spu.alignment = AlignmentFromSegments(spu.seg_states, spu.seg_ends,
                                          spu.clean.NumSamples(), frame_len,
                                          hop);
    out.utterances.push_back(std::move(spu));

    // Volume variant: common scale keeps the decomposition and SNR intact.
    double vf = rng.Uniform(0.8, 1.25);
    Utterance vu = utt;
    std::snprintf(buf, sizeof(buf), "%s-vp%.2f", utt.id.c_str(), vf);
    vu.id = buf;
    vu.clean = VolumePerturb(utt.clean, vf);
    vu.noise = VolumePerturb(utt.noise, vf);
    vu.noisy = VolumePerturb(utt.noisy, vf);
    out.utterances.push_back(std::move(vu));
  }
  return out;
}

std::string SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

void SaveCorpus(const Corpus &corpus, const std::string &dir) {
  EnsureDirectory(dir);
  EnsureDirectory(JoinPath(dir, "wav"));
  EnsureDirectory(JoinPath(dir, "ali"));
  std::ostringstream manifest;
  char buf[64];
  for (const Utterance &utt : corpus.utterances) {
    std::string clean_rel = "wav/" + utt.id + ".clean.f32";
    std::string noise_rel = "wav/" + utt.id + ".noise.f32";
    std::string noisy_rel = "wav/" + utt.id + ".noisy.f32";
    std::string ali_rel = "ali/" + utt.id + ".ali";
    SaveWaveform(JoinPath(dir, clean_rel), utt.clean);
    SaveWaveform(JoinPath(dir, noise_rel), utt.noise);
    SaveWaveform(JoinPath(dir, noisy_rel), utt.noisy);
    std::ostringstream ali;
    for (int s : utt.alignment) ali << s << "\n";
    WriteTextFile(JoinPath(dir, ali_rel), ali.str());

    std::snprintf(buf, sizeof(buf), "%.6f", utt.snr_db);
    manifest << utt.id << "\t" << utt.speaker << "\t" << buf << "\t";
    for (size_t i = 0; i < utt.transcript.size(); ++i)
      manifest << (i ? " " : "") << utt.transcript[i];
    manifest << "\t" << clean_rel << "\t" << noise_rel << "\t" << noisy_rel
             << "\t" << ali_rel << "\n";
  }
  WriteTextFile(JoinPath(dir, "manifest.tsv"), manifest.str());
}

Corpus LoadCorpus(const std::string &dir, Split split) {
  Corpus corpus;
  corpus.split = split;
  std::string manifest = ReadTextFile(JoinPath(dir, "manifest.tsv"));
  std::istringstream lines(manifest);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto fields = SplitString(line, '\t');
    SENAN_CHECK(fields.size() == 8, ErrorCode::kIoError,
                "malformed manifest line: " + line);
    Utterance utt;
    utt.id = fields[0];
    utt.speaker = fields[1];
    utt.snr_db = std::stod(fields[2]);
    std::istringstream tr(fields[3]);
    int phone;
    while (tr >> phone) utt.transcript.push_back(phone);
    SENAN_CHECK(!utt.transcript.empty(), ErrorCode::kEmptyTranscript,
                "empty transcript for " + utt.id);
    utt.clean = LoadWaveform(JoinPath(dir, fields[4]));
    utt.noise = LoadWaveform(JoinPath(dir, fields[5]));
    utt.noisy = LoadWaveform(JoinPath(dir, fields[6]));
    std::istringstream ali(ReadTextFile(JoinPath(dir, fields[7])));
    int state;
    while (ali >> state) utt.alignment.push_back(state);
    corpus.utterances.push_back(std::move(utt));
  }
  return corpus;
}

}  // namespace senan
