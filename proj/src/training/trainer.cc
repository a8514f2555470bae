// training/trainer.cc

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

#include "training/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <sstream>

#include "features/specaug.h"
#include "util/io.h"

namespace senan {

DataPipeline::DataPipeline(const ExperimentConfig &cfg)
    : cfg_(cfg),
      mfcc_(cfg.MakeFeatureConfig(), cfg.corpus_sample_rate),
      speakers_(cfg.features_spk_dim, cfg.features_spk_seed),
      inventory_(PhoneInventory::MakeDefault(cfg.corpus_num_phones,
                                             cfg.corpus_states_per_phone,
                                             cfg.corpus_seed)) {}

PreparedUtterance DataPipeline::Prepare(const Utterance &utt,
                                        const PhoneLm *lm) {
  PreparedUtterance out;
  out.id = utt.id;
  out.transcript = utt.transcript;
  out.alignment = utt.alignment;

  FeatureMatrix noisy = Cmn(mfcc_.Compute(utt.noisy, FeatureKind::kNoisy));
  speakers_.Register(utt.speaker);
  out.x_nsy =
      AssembleNoisyFeatures(noisy, speakers_.Embedding(utt.speaker)).data;
  out.y_clean = Cmn(mfcc_.Compute(utt.clean, FeatureKind::kClean)).data;
  out.y_nse = Cmn(mfcc_.Compute(utt.noise, FeatureKind::kNoise)).data;
  out.frames = out.x_nsy.Rows();
  SENAN_CHECK(static_cast<int>(out.alignment.size()) == out.frames,
              ErrorCode::kLengthMismatch,
              "alignment length does not match feature frames for " + utt.id);
  int k = inventory_.NumStates();
  for (int s : out.alignment)
    SENAN_CHECK(s >= 0 && s < k, ErrorCode::kLabelOutOfRange,
                "alignment state out of range for " + utt.id);
  if (lm != nullptr)
    out.num_graph = BuildNumeratorGraph(out.transcript, inventory_, *lm);
  return out;
}

Trainer::Trainer(const ExperimentConfig &cfg, const Corpus &train_corpus)
    : cfg_(cfg),
      shuffle_rng_(DeriveSeed(cfg.train_seed, "shuffle")),
      specaug_rng_(DeriveSeed(cfg.train_seed, "specaug")) {
  weights_.alpha = cfg_.train_alpha;
  weights_.beta = cfg_.train_beta;
  pipeline_ = std::make_unique<DataPipeline>(cfg_);
  std::vector<std::vector<int>> transcripts;
  transcripts.reserve(train_corpus.utterances.size());
  for (const Utterance &utt : train_corpus.utterances)
    transcripts.push_back(utt.transcript);
  SENAN_CHECK(!transcripts.empty(), ErrorCode::kInvalidConfig,
              "empty training corpus");
  lm_ = std::make_unique<PhoneLm>(
      PhoneLm::Train(transcripts, cfg_.corpus_num_phones));
  den_graph_ = BuildDenominatorGraph(*lm_, pipeline_->inventory());
  data_.reserve(train_corpus.utterances.size());
  for (const Utterance &utt : train_corpus.utterances)
    data_.push_back(pipeline_->Prepare(utt, lm_.get()));
  model_ = std::make_unique<JointModel>(cfg_, ParseTrainMode(cfg_.train_mode));
  int64_t n = static_cast<int64_t>(data_.size());
  int64_t batches = (n + cfg_.train_batch_size - 1) / cfg_.train_batch_size;
  total_steps_ = batches * cfg_.train_epochs;
  if (cfg_.train_momentum > 0.0)
    for (const Parameter &p : model_->params().params())
      velocity_.emplace_back(p.value->tensor.shape);
}

double Trainer::CurrentLr() const {
  if (cfg_.train_lr_initial <= 0.0) return 0.0;
  return LrAt(step_, total_steps_, cfg_.train_lr_initial, cfg_.train_lr_final);
}

Trainer::UttWork Trainer::ProcessUtterance(int index,
                                           uint64_t specaug_seed) const {
  const PreparedUtterance &u = data_[static_cast<size_t>(index)];
  UttWork work;
  work.frames = u.frames;

  Tensor x = u.x_nsy;
  if (cfg_.specaug_enabled) {
    SpecAugConfig sa = cfg_.MakeSpecAugConfig();
    sa.max_time_width = std::min(sa.max_time_width, u.frames);
    sa.max_feat_width = std::min(sa.max_feat_width, x.Cols());
    Rng rng(specaug_seed);
    FeatureMatrix fm;
    fm.data = std::move(x);
    fm.kind = FeatureKind::kNoisy;
    x = SpecAugment(fm, sa, &rng).data;
  }

  TrainMode mode = model_->mode();
  JointModel::UttForward fwd = model_->Forward(x, &u.y_clean, &u.y_nse);
  ValuePtr ce = CeLoss(fwd.logits, u.alignment);
  ValuePtr fmmi;
  try {
    fmmi = MmiScore(fwd.logits, u.num_graph, den_graph_);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kNoPath) {
      work.skipped = true;
      return work;
    }
    throw;
  }
  ValuePtr zero = Constant(Tensor::Scalar(0.0));
  ValuePtr l_enh = zero, l_nse = zero;
  if (mode == TrainMode::kProposed) {
    l_enh = MseLoss(fwd.y_enh, u.y_clean);
    if (model_->nse_enabled()) l_nse = MseLoss(fwd.y_nse, u.y_nse);
  }
  ValuePtr joint = JointLoss(ce, fmmi, l_enh, l_nse, weights_);
  work.ce = ce->tensor.ScalarValue();
  work.fmmi = fmmi->tensor.ScalarValue();
  work.enh = l_enh->tensor.ScalarValue();
  work.nse = l_nse->tensor.ScalarValue();
  work.adjoints = ComputeAdjoints(joint);
  return work;
}

Trainer::StepResult Trainer::Step(const std::vector<int> &indices) {
  SENAN_CHECK(!indices.empty(), ErrorCode::kInvalidConfig, "empty batch");
  model_->params().ZeroGrads();

  std::vector<uint64_t> seeds(indices.size());
  for (auto &s : seeds) s = specaug_rng_.NextU64();

  std::vector<UttWork> works(indices.size());
  int threads = std::max(1, cfg_.train_threads);
  if (threads == 1) {
    for (size_t i = 0; i < indices.size(); ++i)
      works[i] = ProcessUtterance(indices[i], seeds[i]);
  } else {
    for (size_t wave = 0; wave < indices.size();
         wave += static_cast<size_t>(threads)) {
      size_t end = std::min(indices.size(), wave + static_cast<size_t>(threads));
      std::vector<std::future<UttWork>> futures;
      for (size_t i = wave; i < end; ++i)
        futures.push_back(std::async(std::launch::async, [this, &indices,
                                                          &seeds, i] {
          return ProcessUtterance(indices[i], seeds[i]);
        }));
      for (size_t i = wave; i < end; ++i)
        works[i] = futures[i - wave].get();
    }
  }

  StepResult res;
  for (const UttWork &w : works) {
    if (w.skipped) {
      ++res.skipped;
      continue;
    }
    res.frames += w.frames;
    res.ce_sum += w.ce;
    res.fmmi_sum += w.fmmi;
    res.enh_sum += w.enh;
    res.nse_sum += w.nse;
  }
  if (res.frames == 0) return res;  // every utterance skipped

  // Ordered reduction keeps the step deterministic across thread counts.
  double scale = 1.0 / static_cast<double>(res.frames);
  auto &params = model_->params().params();
  for (const UttWork &w : works) {
    if (w.skipped) continue;
    for (const Parameter &p : params) {
      auto it = w.adjoints.find(p.value.get());
      if (it == w.adjoints.end()) continue;
      if (p.value->grad.NumEl() == 0) p.value->grad = Tensor(p.value->tensor.shape);
      for (size_t j = 0; j < it->second.data.size(); ++j)
        p.value->grad.data[j] += scale * it->second.data[j];
    }
  }

  double lr = CurrentLr();
  // Per-tensor and global l2 caps on the step, as factorized-TDNN recipes
  // apply them. The per-tensor cap keeps the large early reconstruction
  // gradients from throttling the acoustic model's effective rate; the
  // global cap bounds the whole step.
  std::vector<double> step_scale(params.size(), 1.0);
  if (lr > 0.0) {
    double total_sq = 0.0;
    for (size_t pi = 0; pi < params.size(); ++pi) {
      const Parameter &p = params[pi];
      if (p.value->grad.NumEl() == 0) continue;
      double sq = 0.0;
      for (double g : p.value->grad.data) sq += g * g;
      double change = lr * std::sqrt(sq);
      if (cfg_.train_max_change_per_param > 0.0 &&
          change > cfg_.train_max_change_per_param) {
        step_scale[pi] = cfg_.train_max_change_per_param / change;
        change = cfg_.train_max_change_per_param;
      }
      total_sq += change * change;
    }
    if (cfg_.train_max_param_change > 0.0) {
      double total = std::sqrt(total_sq);
      if (total > cfg_.train_max_param_change) {
        double s = cfg_.train_max_param_change / total;
        for (double &v : step_scale) v *= s;
      }
    }
  }
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Parameter &p = params[pi];
    if (p.value->grad.NumEl() == 0) continue;
    double eta = lr * step_scale[pi];
    if (cfg_.train_momentum > 0.0) {
      Tensor &v = velocity_[pi];
      for (size_t j = 0; j < v.data.size(); ++j) {
        v.data[j] = cfg_.train_momentum * v.data[j] + p.value->grad.data[j];
        p.value->tensor.data[j] -= eta * v.data[j];
      }
    } else {
      for (size_t j = 0; j < p.value->grad.data.size(); ++j)
        p.value->tensor.data[j] -= eta * p.value->grad.data[j];
    }
  }
  ++step_;
  if (step_ % cfg_.train_constraint_every == 0)
    model_->params().ApplyConstraints();

  double check = res.LTotalPerFrame(weights_);
  SENAN_CHECK(std::isfinite(check), ErrorCode::kDomainError,
              "non-finite loss; training diverged");
  return res;
}

std::vector<EpochMetrics> Trainer::Run(const std::string &out_dir) {
  std::vector<EpochMetrics> metrics;
  int n = static_cast<int>(data_.size());
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;

  double best_loss = std::numeric_limits<double>::infinity();
  std::vector<Tensor> best_params;
  auto snapshot = [&] {
    best_params.clear();
    for (const Parameter &p : model_->params().params())
      best_params.push_back(p.value->tensor);
  };
  snapshot();  // 0-epoch runs keep the initialization as "best"

  for (int epoch = 1; epoch <= cfg_.train_epochs; ++epoch) {
    // Fisher-Yates with the run's own rng keeps shuffles reproducible.
    for (int i = n - 1; i > 0; --i) {
      int j = shuffle_rng_.UniformInt(0, i);
      std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
    }
    StepResult epoch_sum;
    for (int begin = 0; begin < n; begin += cfg_.train_batch_size) {
      int end = std::min(n, begin + cfg_.train_batch_size);
      std::vector<int> batch(order.begin() + begin, order.begin() + end);
      StepResult r = Step(batch);
      epoch_sum.ce_sum += r.ce_sum;
      epoch_sum.fmmi_sum += r.fmmi_sum;
      epoch_sum.enh_sum += r.enh_sum;
      epoch_sum.nse_sum += r.nse_sum;
      epoch_sum.frames += r.frames;
      epoch_sum.skipped += r.skipped;
    }
    EpochMetrics row;
    row.epoch = epoch;
    row.step = step_;
    row.lr = CurrentLr();
    double frames = std::max<int64_t>(1, epoch_sum.frames);
    row.l_ce = epoch_sum.ce_sum / frames;
    row.f_mmi = epoch_sum.fmmi_sum / frames;
    row.l_enh = epoch_sum.enh_sum / frames;
    row.l_nse = epoch_sum.nse_sum / frames;
    row.l_total = weights_.alpha * row.l_ce - row.f_mmi +
                  weights_.beta * (row.l_enh + row.l_nse);
    row.skipped = epoch_sum.skipped;
    metrics.push_back(row);
    if (row.l_total < best_loss) {
      best_loss = row.l_total;
      snapshot();
    }
  }

  if (!out_dir.empty()) {
    EnsureDirectory(out_dir);
    WriteTextFile(JoinPath(out_dir, "metrics.csv"), MetricsCsv(metrics));
    model_->params().Save(JoinPath(out_dir, "final.ckpt"));
    // restore-best copy for the best checkpoint
    std::vector<Tensor> current;
    auto &params = model_->params().params();
    for (const Parameter &p : params) current.push_back(p.value->tensor);
    for (size_t i = 0; i < params.size(); ++i)
      params[i].value->tensor = best_params[i];
    model_->params().Save(JoinPath(out_dir, "best.ckpt"));
    for (size_t i = 0; i < params.size(); ++i)
      params[i].value->tensor = current[i];
  }
  return metrics;
}

std::string MetricsCsv(const std::vector<EpochMetrics> &rows) {
  std::ostringstream os;
  os << "epoch,step,lr,L_total,L_ce,F_mmi,L_enh,L_nse,skipped\n";
  char buf[220];
  for (const EpochMetrics &r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%d,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.epoch,
                  static_cast<long long>(r.step), r.lr, r.l_total, r.l_ce,
                  r.f_mmi, r.l_enh, r.l_nse, r.skipped);
    os << buf;
  }
  return os.str();
}

}  // namespace senan
