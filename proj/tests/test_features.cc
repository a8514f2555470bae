// tests/test_features.cc

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
#include <complex>

#include "doctest.h"
#include "features/archive.h"
#include "features/fft.h"
#include "features/mfcc.h"
#include "features/speaker.h"
#include "features/specaug.h"
#include "util/rng.h"

using namespace senan;

namespace {

Waveform RandomWave(int n, uint64_t seed, double scale = 0.1) {
  Rng rng(seed);
  Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(static_cast<size_t>(n));
  for (auto &v : w.samples) v = scale * rng.Gaussian();
  return w;
}

}  // namespace

TEST_CASE("fft matches a direct DFT") {
  Rng rng(3);
  int n = 64;
  std::vector<std::complex<double>> a(static_cast<size_t>(n));
  for (auto &v : a) v = {rng.Gaussian(), rng.Gaussian()};
  auto direct = [&](int k) {
    std::complex<double> s{0.0, 0.0};
    for (int i = 0; i < n; ++i)
      s += a[static_cast<size_t>(i)] *
           std::polar(1.0, -2.0 * M_PI * k * i / n);
    return s;
  };
  std::vector<std::complex<double>> fft = a;
  Fft(&fft);
  for (int k = 0; k < n; ++k)
    CHECK(std::abs(fft[static_cast<size_t>(k)] - direct(k)) < 1e-9);
}

TEST_CASE("frame counts") {
  FeatureConfig cfg;
  CHECK(FrameSignal(RandomWave(16000, 1), cfg).size() == 98);
  CHECK(FrameSignal(RandomWave(400, 2), cfg).size() == 1);
  CHECK_THROWS_AS(FrameSignal(RandomWave(399, 3), cfg), Error);
}

TEST_CASE("dct of constant log-mel rows concentrates in c0") {
  // a frame of zeros hits the log floor in every mel bin: constant row
  FeatureConfig cfg;
  Waveform silence;
  silence.sample_rate = 16000;
  silence.samples.assign(800, 0.0);
  FeatureMatrix f = Mfcc(silence, cfg, FeatureKind::kClean);
  double c = std::log(cfg.log_floor);
  for (int t = 0; t < f.Frames(); ++t) {
    CHECK(f.data.At(t, 0) ==
          doctest::Approx(c * std::sqrt(static_cast<double>(cfg.n_mels)))
              .epsilon(1e-9));
    for (int j = 1; j < f.Dims(); ++j)
      CHECK(std::fabs(f.data.At(t, j)) < 1e-9);
    // silence rows are identical
    for (int j = 0; j < f.Dims(); ++j)
      CHECK(f.data.At(t, j) == f.data.At(0, j));
  }
}

TEST_CASE("orthonormal DCT round trip recovers log-mel") {
  FeatureConfig cfg;
  cfg.n_ceps = cfg.n_mels;  // full-rank
  Waveform w = RandomWave(4000, 11);
  FeatureMatrix f = Mfcc(w, cfg, FeatureKind::kNoisy);
  // rebuild the DCT matrix and invert (orthonormal: inverse = transpose)
  int m = cfg.n_mels;
  std::vector<std::vector<double>> dct(
      static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      double wk = k == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
      dct[static_cast<size_t>(i)][static_cast<size_t>(k)] =
          wk * std::cos(M_PI * k * (2.0 * i + 1.0) / (2.0 * m));
    }
  //179-sample check: log-mel from inverse DCT, then forward again
  for (int t = 0; t < f.Frames(); ++t) {
    std::vector<double> logmel(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        logmel[static_cast<size_t>(i)] +=
            dct[static_cast<size_t>(i)][static_cast<size_t>(k)] *
            f.data.At(t, k);
    for (int k = 0; k < m; ++k) {
      double c = 0.0;
      for (int i = 0; i < m; ++i)
        c += logmel[static_cast<size_t>(i)] *
             dct[static_cast<size_t>(i)][static_cast<size_t>(k)];
      CHECK(std::fabs(c - f.data.At(t, k)) < 1e-9);
    }
  }
}

TEST_CASE("amplitude scaling shifts only c0") {
  FeatureConfig cfg;
  Waveform w = RandomWave(4000, 13, 0.2);
  Waveform loud = w;
  for (auto &v : loud.samples) v *= 3.0;
  FeatureMatrix a = Mfcc(w, cfg, FeatureKind::kNoisy);
  FeatureMatrix b = Mfcc(loud, cfg, FeatureKind::kNoisy);
  double expected_shift =
      2.0 * std::log(3.0) * std::sqrt(static_cast<double>(cfg.n_mels));
  for (int t = 0; t < a.Frames(); ++t) {
    CHECK(std::fabs((b.data.At(t, 0) - a.data.At(t, 0)) - expected_shift) <
          1e-6);
    for (int j = 1; j < a.Dims(); ++j)
      CHECK(std::fabs(b.data.At(t, j) - a.data.At(t, j)) < 1e-6);
  }
}

TEST_CASE("cmn zeroes column means and is exactly idempotent") {
  Rng rng(17);
  FeatureMatrix f;
  f.data = Tensor({30, 12});
  for (auto &v : f.data.data) v = 5.0 + rng.Gaussian();

  FeatureMatrix once = Cmn(f);
  for (int j = 0; j < 12; ++j) {
    double mean = 0.0;
    for (int t = 0; t < 30; ++t) mean += once.data.At(t, j);
    CHECK(std::fabs(mean / 30) < 1e-12);
  }
  FeatureMatrix twice = Cmn(once);
  CHECK(twice.data.data == once.data.data);

  // single frame -> all zeros
  FeatureMatrix single;
  single.data = Tensor({1, 4}, {1.0, -2.0, 3.0, 4.0});
  FeatureMatrix z = Cmn(single);
  for (double v : z.data.data) CHECK(v == 0.0);

  // already zero-mean rows v, -v are unchanged
  FeatureMatrix pair;
  pair.data = Tensor({2, 3}, {1.0, -2.0, 0.5, -1.0, 2.0, -0.5});
  FeatureMatrix same = Cmn(pair);
  CHECK(same.data.data == pair.data.data);
}

TEST_CASE("speaker embeddings are frozen unit vectors") {
  SpeakerTable table(8, 42);
  table.Register("spk01");
  std::vector<double> v1 = table.Embedding("spk01");
  table.Register("spk01");
  CHECK(table.Embedding("spk01") == v1);
  double norm2 = 0.0;
  for (double v : v1) norm2 += v * v;
  CHECK(std::fabs(std::sqrt(norm2) - 1.0) < 1e-12);
  CHECK_THROWS_AS(table.Embedding("spk99"), Error);

  // same (seed, id) gives the same vector in a fresh table
  SpeakerTable other(8, 42);
  other.Register("spk01");
  CHECK(other.Embedding("spk01") == v1);
}

TEST_CASE("assembled noisy features append the speaker vector") {
  Rng rng(19);
  FeatureMatrix mfcc;
  mfcc.data = Tensor({98, 40});
  for (auto &v : mfcc.data.data) v = rng.Gaussian();
  std::vector<double> spk(8);
  for (auto &v : spk) v = rng.Gaussian();
  FeatureMatrix x = AssembleNoisyFeatures(mfcc, spk);
  CHECK(x.Frames() == 98);
  CHECK(x.Dims() == 48);
  CHECK(x.kind == FeatureKind::kNoisy);
  for (int t = 0; t < x.Frames(); ++t) {
    for (int j = 0; j < 40; ++j) CHECK(x.data.At(t, j) == mfcc.data.At(t, j));
    for (int j = 0; j < 8; ++j)
      CHECK(x.data.At(t, 40 + j) == spk[static_cast<size_t>(j)]);
  }
  // zero speaker vector -> zero suffix
  FeatureMatrix x0 = AssembleNoisyFeatures(mfcc, std::vector<double>(8, 0.0));
  for (int t = 0; t < x0.Frames(); ++t)
    for (int j = 40; j < 48; ++j) CHECK(x0.data.At(t, j) == 0.0);
}

TEST_CASE("spec augment masks") {
  Rng rng(23);
  FeatureMatrix f;
  f.data = Tensor({40, 16});
  for (auto &v : f.data.data) v = rng.Gaussian();

  SpecAugConfig none;
  none.n_time_masks = 0;
  none.n_feat_masks = 0;
  Rng r1(1);
  FeatureMatrix same = SpecAugment(f, none, &r1);
  CHECK(same.data.data == f.data.data);

  // forced full-width time mask: every row becomes the mean row
  FeatureMatrix full = ApplyMasks(f, {{true, 0, 40}});
  for (int j = 0; j < 16; ++j) {
    double mean = 0.0;
    for (int t = 0; t < 40; ++t) mean += f.data.At(t, j);
    mean /= 40;
    for (int t = 0; t < 40; ++t)
      CHECK(full.data.At(t, j) == doctest::Approx(mean).epsilon(1e-12));
  }

  // entries outside the chosen bands never change
  FeatureMatrix masked = ApplyMasks(f, {{true, 5, 3}, {false, 2, 4}});
  for (int t = 0; t < 40; ++t)
    for (int j = 0; j < 16; ++j) {
      bool in_time = t >= 5 && t < 8;
      bool in_feat = j >= 2 && j < 6;
      if (!in_time && !in_feat)
        CHECK(masked.data.At(t, j) == f.data.At(t, j));
    }

  CHECK_THROWS_AS(ApplyMasks(f, {{true, 39, 2}}), Error);

  SpecAugConfig wide;
  wide.max_time_width = 100;
  Rng r2(2);
  CHECK_THROWS_AS(SpecAugment(f, wide, &r2), Error);
}

TEST_CASE("spec augment masked fraction is near its expectation") {
  // E[masked frames per mask] = max_w / 2 over width ~ U{0..max_w}
  int t_frames = 50, max_w = 10, draws = 1000;
  FeatureMatrix f;
  f.data = Tensor({t_frames, 4});
  Rng value_rng(29);
  for (auto &v : f.data.data) v = value_rng.Gaussian() + 10.0;
  SpecAugConfig cfg;
  cfg.n_time_masks = 1;
  cfg.max_time_width = max_w;
  cfg.n_feat_masks = 0;
  Rng rng(31);
  int64_t masked_total = 0;
  for (int d = 0; d < draws; ++d) {
    FeatureMatrix m = SpecAugment(f, cfg, &rng);
    for (int t = 0; t < t_frames; ++t)
      if (m.data.At(t, 0) != f.data.At(t, 0)) ++masked_total;
  }
  double mean_masked = static_cast<double>(masked_total) / draws;
  double expected = max_w / 2.0;
  CHECK(mean_masked > expected * 0.9);
  CHECK(mean_masked < expected * 1.1);
}

TEST_CASE("feature archive round trip with index") {
  Rng rng(37);
  FeatureMatrix f;
  f.kind = FeatureKind::kEnhanced;
  f.data = Tensor({7, 5});
  for (auto &v : f.data.data) v = rng.Gaussian();
  std::string path = "/tmp/senan_test_feats.bin";
  WriteFeatureFile(path, f);
  FeatureMatrix back = ReadFeatureFile(path);
  CHECK(back.kind == FeatureKind::kEnhanced);
  CHECK(back.data.shape == f.data.shape);
  CHECK(back.data.data == f.data.data);

  std::map<std::string, std::string> index{{"utt1", path}};
  WriteFeatureIndex("/tmp/senan_test_feats.idx", index);
  auto loaded = ReadFeatureIndex("/tmp/senan_test_feats.idx");
  CHECK(loaded == index);
}
