// tests/test_training.cc

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

#include "doctest.h"
#include "fd_check.h"
#include "numerics/constraint.h"
#include "training/trainer.h"

using namespace senan;

namespace {

ExperimentConfig TinyConfig() {
  ExperimentConfig cfg;
  cfg.corpus_num_train = 6;
  cfg.corpus_num_test = 2;
  cfg.corpus_num_speakers = 2;
  cfg.corpus_num_phones = 4;
  cfg.corpus_min_phones = 3;
  cfg.corpus_max_phones = 4;
  cfg.corpus_min_segment_ms = 80.0;
  cfg.corpus_max_segment_ms = 120.0;
  cfg.corpus_seed = 555;
  cfg.features_spk_dim = 4;
  cfg.senan_h_first = 8;
  cfg.senan_h_last = 16;
  cfg.am_layers = 2;
  cfg.am_hidden = 12;
  cfg.am_bottleneck = 4;
  cfg.am_final_bottleneck = 6;
  cfg.train_epochs = 2;
  cfg.train_batch_size = 3;
  cfg.train_seed = 7;
  return cfg;
}

Corpus TinyCorpus(const ExperimentConfig &cfg) {
  return GenerateCorpus(cfg.MakeCorpusConfig(cfg.corpus_num_train),
                        Split::kTrain);
}

}  // namespace

TEST_CASE("cross entropy against the reference labels") {
  int t_frames = 7, k = 5;
  std::vector<int> labels(static_cast<size_t>(t_frames), 2);
  // uniform logits: loss is T ln K regardless of the labels
  ValuePtr uniform = CeLoss(Constant(Tensor({t_frames, k})), labels);
  CHECK(uniform->tensor.ScalarValue() ==
        doctest::Approx(t_frames * std::log(static_cast<double>(k)))
            .epsilon(1e-12));

  // a growing margin on the correct label drives the loss to zero
  double prev = uniform->tensor.ScalarValue();
  for (double margin : {2.0, 5.0, 10.0, 40.0}) {
    Tensor logits({t_frames, k});
    for (int t = 0; t < t_frames; ++t) logits.At(t, 2) = margin;
    double loss = CeLoss(Constant(logits), labels)->tensor.ScalarValue();
    CHECK(loss < prev);
    prev = loss;
  }
  CHECK(prev < 1e-12);

  // random case against a direct per-frame summation
  Rng rng(3);
  Tensor logits = RandomTensor({t_frames, k}, &rng);
  std::vector<int> rand_labels(static_cast<size_t>(t_frames));
  for (auto &s : rand_labels) s = rng.UniformInt(0, k - 1);
  double direct = 0.0;
  for (int t = 0; t < t_frames; ++t) {
    double lse = 0.0, m = logits.At(t, 0);
    for (int j = 1; j < k; ++j) m = std::max(m, logits.At(t, j));
    for (int j = 0; j < k; ++j) lse += std::exp(logits.At(t, j) - m);
    direct -= logits.At(t, rand_labels[static_cast<size_t>(t)]) - m -
              std::log(lse);
  }
  double got = CeLoss(Constant(logits), rand_labels)->tensor.ScalarValue();
  CHECK(std::fabs(got - direct) / std::max(1.0, std::fabs(direct)) < 1e-12);

  CHECK_THROWS_AS(CeLoss(Constant(logits), std::vector<int>{0, 1}), Error);
  std::vector<int> bad(static_cast<size_t>(t_frames), k);
  CHECK_THROWS_AS(CeLoss(Constant(logits), bad), Error);
}

TEST_CASE("cross entropy gradient matches central differences") {
  Rng rng(5);
  Tensor logits = RandomTensor({4, 3}, &rng);
  std::vector<int> labels = {0, 2, 1, 2};
  CHECK(MaxRelFdError({logits}, [&](const auto &v) {
          return CeLoss(v[0], labels);
        }) < 1e-6);
}

TEST_CASE("joint objective combines the weighted components") {
  LossWeights w;  // alpha 5, beta 0.2
  auto c = [](double v) { return Constant(Tensor::Scalar(v)); };
  CHECK(JointLoss(c(1), c(2), c(3), c(4), w)->tensor.ScalarValue() ==
        doctest::Approx(4.4).epsilon(1e-12));
  LossWeights no_recon;
  no_recon.beta = 0.0;
  CHECK(JointLoss(c(1), c(2), c(3), c(4), no_recon)->tensor.ScalarValue() ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(JointLoss(c(0), c(0), c(0), c(0), w)->tensor.ScalarValue() == 0.0);
}

TEST_CASE("learning rate schedule interpolates exponentially") {
  CHECK(LrAt(0, 100, 0.01, 0.001) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(LrAt(100, 100, 0.01, 0.001) ==
        doctest::Approx(0.001).epsilon(1e-12));
  CHECK(LrAt(50, 100, 0.01, 0.001) ==
        doctest::Approx(std::sqrt(0.01 * 0.001)).epsilon(1e-12));
}

TEST_CASE("single-utterance overfit decreases the joint loss") {
  ExperimentConfig cfg = TinyConfig();
  cfg.corpus_num_train = 1;
  cfg.train_batch_size = 1;
  cfg.train_epochs = 50;
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  int decreases = 0;
  double prev = 1e300;
  for (int step = 0; step < 50; ++step) {
    Trainer::StepResult r = trainer.Step({0});
    double loss = r.LTotalPerFrame(trainer.weights());
    if (loss < prev) ++decreases;
    prev = loss;
  }
  CHECK(decreases >= 45);
}

TEST_CASE("mutual information rises over the first epochs of an overfit") {
  ExperimentConfig cfg = TinyConfig();
  cfg.corpus_num_train = 2;
  cfg.train_batch_size = 2;
  cfg.train_epochs = 5;
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  double prev = -1e300;
  for (int epoch = 0; epoch < 5; ++epoch) {
    Trainer::StepResult r = trainer.Step({0, 1});
    double f = r.fmmi_sum / static_cast<double>(r.frames);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("zero learning rate leaves parameters bit-identical") {
  ExperimentConfig cfg = TinyConfig();
  cfg.train_lr_initial = 0.0;
  cfg.train_lr_final = 0.0;
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  std::vector<Tensor> before;
  for (const auto &p : trainer.model().params().params())
    before.push_back(p.value->tensor);
  trainer.Step({0, 1, 2});
  const auto &params = trainer.model().params().params();
  for (size_t i = 0; i < params.size(); ++i)
    CHECK(params[i].value->tensor.data == before[i].data);
}

TEST_CASE("with beta zero the heads still learn through the model path") {
  ExperimentConfig cfg = TinyConfig();
  cfg.train_beta = 0.0;
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  trainer.Step({0, 1, 2});
  auto &params = trainer.model().params();
  for (const char *name : {"senan.head_enh.w", "senan.head_nse.w"}) {
    double norm = 0.0;
    for (double g : params.Get(name).value->grad.data) norm += g * g;
    CHECK(norm > 0.0);
  }
}

TEST_CASE("gradient completeness across all modules") {
  ExperimentConfig cfg = TinyConfig();
  cfg.agg_enh = "sat";
  cfg.agg_nse = "sat";
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  trainer.Step({0, 1, 2, 3, 4, 5});
  for (const auto &p : trainer.model().params().params()) {
    double norm = 0.0;
    if (p.value->grad.NumEl() != 0)
      for (double g : p.value->grad.data) norm += g * g;
    INFO(p.name);
    CHECK(norm > 0.0);
  }
}

TEST_CASE("constraint is re-applied during optimization") {
  ExperimentConfig cfg = TinyConfig();
  cfg.train_constraint_every = 2;
  cfg.train_epochs = 4;
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  trainer.Run("");
  // 8 steps total, so the last update was followed by a projection
  for (const auto &p : trainer.model().params().params())
    if (p.constraint == Constraint::kSemiOrthogonal) {
      INFO(p.name);
      CHECK(SemiOrthogonalResidual(p.value->tensor) < 0.05);
    }
}

TEST_CASE("training runs deterministically, independent of thread count") {
  ExperimentConfig cfg = TinyConfig();
  Corpus corpus = TinyCorpus(cfg);
  Trainer a(cfg, corpus);
  std::string csv_a = MetricsCsv(a.Run(""));
  Trainer b(cfg, corpus);
  std::string csv_b = MetricsCsv(b.Run(""));
  CHECK(csv_a == csv_b);

  ExperimentConfig threaded = cfg;
  threaded.train_threads = 3;
  Trainer c(threaded, corpus);
  CHECK(MetricsCsv(c.Run("")) == csv_a);

  ExperimentConfig other_seed = cfg;
  other_seed.train_seed = 8;
  Trainer d(other_seed, corpus);
  CHECK(MetricsCsv(d.Run("")) != csv_a);
}

TEST_CASE("zero epochs keeps the initialization") {
  ExperimentConfig cfg = TinyConfig();
  cfg.train_epochs = 0;
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  trainer.Run("/tmp/senan_test_zero_epochs");
  JointModel fresh(cfg, TrainMode::kProposed);
  fresh.params().Load("/tmp/senan_test_zero_epochs/final.ckpt");
  const auto &a = trainer.model().params().params();
  const auto &b = fresh.params().params();
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].value->tensor.data == b[i].value->tensor.data);
}

TEST_CASE("oracle mode trains without reconstruction losses") {
  ExperimentConfig cfg = TinyConfig();
  cfg.train_mode = "oracle";
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  Trainer::StepResult r = trainer.Step({0, 1, 2});
  CHECK(r.enh_sum == 0.0);
  CHECK(r.nse_sum == 0.0);
  for (const auto &p : trainer.model().params().params())
    CHECK(p.name.substr(0, 6) != "senan.");
}

TEST_CASE("baseline mode has no enhancement parameters at all") {
  ExperimentConfig cfg = TinyConfig();
  cfg.train_mode = "baseline";
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  for (const auto &p : trainer.model().params().params()) {
    CHECK(p.name.substr(0, 6) != "senan.");
    CHECK(p.name.substr(0, 4) != "agg.");
  }
  Trainer::StepResult r = trainer.Step({0, 1});
  CHECK(r.frames > 0);
}

TEST_CASE("logged loss equals the weighted recombination of components") {
  ExperimentConfig cfg = TinyConfig();
  Corpus corpus = TinyCorpus(cfg);
  Trainer trainer(cfg, corpus);
  std::vector<EpochMetrics> metrics = trainer.Run("");
  REQUIRE(!metrics.empty());
  for (const EpochMetrics &m : metrics) {
    double recombined = cfg.train_alpha * m.l_ce - m.f_mmi +
                        cfg.train_beta * (m.l_enh + m.l_nse);
    CHECK(std::fabs(recombined - m.l_total) < 1e-9);
  }
}

TEST_CASE("spec augment in training keeps runs deterministic") {
  ExperimentConfig cfg = TinyConfig();
  cfg.specaug_enabled = true;
  cfg.specaug_max_time_width = 8;
  cfg.specaug_max_feat_width = 4;
  Corpus corpus = TinyCorpus(cfg);
  Trainer a(cfg, corpus);
  Trainer b(cfg, corpus);
  CHECK(MetricsCsv(a.Run("")) == MetricsCsv(b.Run("")));
}

TEST_CASE("momentum variant stays finite and distinct") {
  ExperimentConfig cfg = TinyConfig();
  Corpus corpus = TinyCorpus(cfg);
  Trainer plain(cfg, corpus);
  std::string plain_csv = MetricsCsv(plain.Run(""));
  ExperimentConfig mcfg = cfg;
  mcfg.train_momentum = 0.9;
  Trainer mom(mcfg, corpus);
  std::string mom_csv = MetricsCsv(mom.Run(""));
  CHECK(mom_csv != plain_csv);
}
