// tests/test_corpus.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <set>

#include "corpus/corpus.h"
#include "doctest.h"
#include "util/io.h"

using namespace senan;

namespace {

CorpusConfig SmallConfig() {
  CorpusConfig cfg;
  cfg.num_utterances = 12;
  cfg.num_speakers = 3;
  cfg.num_phones = 5;
  cfg.snr_min_db = 5.0;
  cfg.snr_max_db = 15.0;
  cfg.min_phones = 3;
  cfg.max_phones = 5;
  cfg.seed = 77;
  return cfg;
}

}  // namespace

TEST_CASE("generation is deterministic given the seed") {
  CorpusConfig cfg = SmallConfig();
  Corpus a = GenerateCorpus(cfg, Split::kTrain);
  Corpus b = GenerateCorpus(cfg, Split::kTrain);
  REQUIRE(a.utterances.size() == b.utterances.size());
  for (size_t i = 0; i < a.utterances.size(); ++i) {
    CHECK(a.utterances[i].id == b.utterances[i].id);
    CHECK(a.utterances[i].clean.samples == b.utterances[i].clean.samples);
    CHECK(a.utterances[i].noisy.samples == b.utterances[i].noisy.samples);
    CHECK(a.utterances[i].alignment == b.utterances[i].alignment);
  }
  Corpus test_split = GenerateCorpus(cfg, Split::kTest);
  CHECK(test_split.utterances[0].clean.samples !=
        a.utterances[0].clean.samples);
}

TEST_CASE("generated utterances meet the requested SNR range") {
  CorpusConfig cfg = SmallConfig();
  cfg.snr_min_db = 10.0;
  cfg.snr_max_db = 20.0;
  Corpus corpus = GenerateCorpus(cfg, Split::kTrain);
  for (const Utterance &u : corpus.utterances) {
    double measured = MeasureSnrDb(u.clean, u.noise);
    CHECK(measured == doctest::Approx(u.snr_db).epsilon(1e-9));
    CHECK(measured >= 10.0 - 0.01);
    CHECK(measured <= 20.0 + 0.01);
  }
}

TEST_CASE("zero utterances is rejected") {
  CorpusConfig cfg = SmallConfig();
  cfg.num_utterances = 0;
  CHECK_THROWS_AS(GenerateCorpus(cfg, Split::kTrain), Error);
}

TEST_CASE("noise derivation recovers construction exactly") {
  CorpusConfig cfg = SmallConfig();
  Corpus corpus = GenerateCorpus(cfg, Split::kTrain);
  for (const Utterance &u : corpus.utterances) {
    // noisy == clean + noise by construction
    for (size_t i = 0; i < u.noisy.samples.size(); ++i)
      CHECK(std::fabs(u.noisy.samples[i] -
                      (u.clean.samples[i] + u.noise.samples[i])) < 1e-9);
    NoiseFit fit = DeriveNoise(u.noisy, u.clean);
    CHECK(std::fabs(fit.gain - 1.0) < 1e-9);
    for (size_t i = 0; i < fit.noise.samples.size(); ++i)
      CHECK(std::fabs(fit.noise.samples[i] - u.noise.samples[i]) < 1e-9);
  }
}

TEST_CASE("derive_noise edge cases") {
  Waveform clean;
  clean.samples = {1.0, 2.0, -1.0, 0.5};
  NoiseFit identity = DeriveNoise(clean, clean);
  CHECK(identity.gain == doctest::Approx(1.0).epsilon(1e-15));
  for (double v : identity.noise.samples) CHECK(std::fabs(v) < 1e-15);

  // mix with a known gain and an orthogonalized noise
  Rng rng(5);
  Waveform n;
  n.samples.resize(clean.samples.size());
  for (auto &v : n.samples) v = rng.Gaussian();
  n = OrthogonalizeAgainst(n, clean);
  Waveform noisy;
  noisy.samples.resize(clean.samples.size());
  for (size_t i = 0; i < noisy.samples.size(); ++i)
    noisy.samples[i] = 0.5 * clean.samples[i] + n.samples[i];
  NoiseFit fit = DeriveNoise(noisy, clean);
  CHECK(std::fabs(fit.gain - 0.5) < 1e-9);
  for (size_t i = 0; i < n.samples.size(); ++i)
    CHECK(std::fabs(fit.noise.samples[i] - n.samples[i]) < 1e-9);

  Waveform zeros;
  zeros.samples.assign(4, 0.0);
  CHECK_THROWS_AS(DeriveNoise(noisy, zeros), Error);
  Waveform shorter;
  shorter.samples = {1.0};
  CHECK_THROWS_AS(DeriveNoise(shorter, clean), Error);
}

TEST_CASE("snr mixing closed forms and round trip") {
  Rng rng(9);
  Waveform clean, noise;
  clean.samples.resize(4096);
  noise.samples.resize(4096);
  for (auto &v : clean.samples) v = rng.Gaussian();
  // equal power by construction
  noise.samples = clean.samples;
  for (auto &v : noise.samples) v = -v;
  CHECK(SnrGain(clean, noise, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(SnrGain(clean, noise, 20.0) == doctest::Approx(0.1).epsilon(1e-12));

  // round trip: re-measure the SNR of a mix after re-deriving the noise
  for (auto &v : noise.samples) v = rng.Gaussian();
  noise = OrthogonalizeAgainst(noise, clean);
  double requested = 7.25;
  Waveform noisy = MixAtSnr(clean, noise, requested);
  NoiseFit fit = DeriveNoise(noisy, clean);
  CHECK(std::fabs(MeasureSnrDb(clean, fit.noise) - requested) < 1e-6);

  Waveform silent;
  silent.samples.assign(4096, 0.0);
  CHECK_THROWS_AS(MixAtSnr(clean, silent, 10.0), Error);
}

TEST_CASE("volume perturbation") {
  Waveform w;
  w.samples = {0.5, -0.25, 0.125};
  Waveform same = VolumePerturb(w, 1.0);
  CHECK(same.samples == w.samples);
  Waveform doubled = VolumePerturb(w, 2.0);
  CHECK(SignalPower(doubled) ==
        doctest::Approx(4.0 * SignalPower(w)).epsilon(1e-12));
  CHECK_THROWS_AS(VolumePerturb(w, 0.0), Error);
}

TEST_CASE("speed perturbation length and pitch") {
  Rng rng(21);
  Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(16000);
  for (auto &v : w.samples) v = rng.Gaussian();
  CHECK(SpeedPerturb(w, 1.0).samples.size() == 16000);
  CHECK(SpeedPerturb(w, 0.9).samples.size() == 17778);
  CHECK_THROWS_AS(SpeedPerturb(w, 0.3), Error);

  // 100 Hz tone at factor 1.1 peaks near 110 Hz
  for (size_t i = 0; i < w.samples.size(); ++i)
    w.samples[i] = std::sin(2.0 * M_PI * 100.0 * i / 16000.0);
  Waveform fast = SpeedPerturb(w, 1.1);
  double best_f = 0.0, best_mag = -1.0;
  for (double f = 80.0; f <= 140.0; f += 0.25) {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < fast.samples.size(); ++i) {
      double ang = 2.0 * M_PI * f * i / 16000.0;
      re += fast.samples[i] * std::cos(ang);
      im += fast.samples[i] * std::sin(ang);
    }
    double mag = re * re + im * im;
    if (mag > best_mag) {
      best_mag = mag;
      best_f = f;
    }
  }
  CHECK(std::fabs(best_f - 110.0) <= 1.0);
}

TEST_CASE("alignment labels are dense within segments") {
  CorpusConfig cfg = SmallConfig();
  cfg.states_per_phone = 2;
  Corpus corpus = GenerateCorpus(cfg, Split::kTrain);
  int k = cfg.num_phones * cfg.states_per_phone;
  for (const Utterance &u : corpus.utterances) {
    REQUIRE(!u.alignment.empty());
    for (int s : u.alignment) {
      CHECK(s >= 0);
      CHECK(s < k);
    }
    // labels change only at segment boundaries
    int changes = 0;
    for (size_t i = 1; i < u.alignment.size(); ++i)
      if (u.alignment[i] != u.alignment[i - 1]) ++changes;
    CHECK(changes <= static_cast<int>(u.seg_states.size()));
  }
}

TEST_CASE("every phone appears in the training split") {
  CorpusConfig cfg = SmallConfig();
  Corpus corpus = GenerateCorpus(cfg, Split::kTrain);
  std::set<int> seen;
  for (const Utterance &u : corpus.utterances)
    seen.insert(u.transcript.begin(), u.transcript.end());
  CHECK(static_cast<int>(seen.size()) == cfg.num_phones);
}

TEST_CASE("tripling yields three times the utterances with distinct ids") {
  CorpusConfig cfg = SmallConfig();
  Corpus corpus = GenerateCorpus(cfg, Split::kTrain);
  Corpus tripled = TripleCorpus(corpus, cfg);
  CHECK(tripled.utterances.size() == 3 * corpus.utterances.size());
  std::set<std::string> ids;
  for (const Utterance &u : tripled.utterances) ids.insert(u.id);
  CHECK(ids.size() == tripled.utterances.size());

  // perturbed copies keep the exact decomposition and SNR
  for (const Utterance &u : tripled.utterances) {
    NoiseFit fit = DeriveNoise(u.noisy, u.clean);
    CHECK(std::fabs(fit.gain - 1.0) < 1e-9);
    CHECK(std::fabs(MeasureSnrDb(u.clean, u.noise) - u.snr_db) < 1e-6);
    int frame_len = cfg.frame_ms * cfg.sample_rate / 1000;
    int hop = cfg.hop_ms * cfg.sample_rate / 1000;
    int64_t expect_frames = (u.clean.NumSamples() - frame_len) / hop + 1;
    CHECK(static_cast<int64_t>(u.alignment.size()) == expect_frames);
  }
}

TEST_CASE("waveform file round trip") {
  Rng rng(33);
  Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(512);
  for (auto &v : w.samples) v = 0.1 * rng.Gaussian();
  std::string path = "/tmp/senan_test_wave.f32";
  SaveWaveform(path, w);
  Waveform back = LoadWaveform(path);
  CHECK(back.sample_rate == 16000);
  REQUIRE(back.samples.size() == w.samples.size());
  for (size_t i = 0; i < w.samples.size(); ++i)
    CHECK(back.samples[i] ==
          static_cast<double>(static_cast<float>(w.samples[i])));
}

TEST_CASE("corpus manifest round trip") {
  CorpusConfig cfg = SmallConfig();
  cfg.num_utterances = 4;
  Corpus corpus = GenerateCorpus(cfg, Split::kTrain);
  std::string dir = "/tmp/senan_test_corpus";
  std::filesystem::remove_all(dir);
  SaveCorpus(corpus, dir);
  Corpus back = LoadCorpus(dir, Split::kTrain);
  REQUIRE(back.utterances.size() == corpus.utterances.size());
  for (size_t i = 0; i < corpus.utterances.size(); ++i) {
    const Utterance &a = corpus.utterances[i];
    const Utterance &b = back.utterances[i];
    CHECK(a.id == b.id);
    CHECK(a.speaker == b.speaker);
    CHECK(a.transcript == b.transcript);
    CHECK(a.alignment == b.alignment);
    CHECK(std::fabs(a.snr_db - b.snr_db) < 1e-6);
    REQUIRE(a.clean.samples.size() == b.clean.samples.size());
    // float32 storage
    for (size_t j = 0; j < a.clean.samples.size(); j += 97)
      CHECK(std::fabs(a.clean.samples[j] - b.clean.samples[j]) < 1e-6);
  }
  // byte-identical manifests across reruns of the same seed
  std::string manifest_a = ReadTextFile(JoinPath(dir, "manifest.tsv"));
  std::filesystem::remove_all(dir);
  SaveCorpus(GenerateCorpus(cfg, Split::kTrain), dir);
  CHECK(ReadTextFile(JoinPath(dir, "manifest.tsv")) == manifest_a);
}
