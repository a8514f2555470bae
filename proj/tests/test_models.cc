// tests/test_models.cc

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

#include "aggregation/aggregation.h"
#include "am/acoustic_model.h"
#include "doctest.h"
#include "fd_check.h"
#include "numerics/constraint.h"
#include "senan/senan_model.h"

using namespace senan;

namespace {

void ZeroAllParams(ParameterSet *params) {
  for (auto &p : params->params()) p.value->tensor.SetZero();
}

}  // namespace

TEST_CASE("hidden layer widths interpolate linearly over five layers") {
  CHECK(SenanModel::HiddenSizes(64, 128) ==
        std::vector<int>{64, 80, 96, 112, 128});
  CHECK(SenanModel::HiddenSizes(1024, 2048) ==
        std::vector<int>{1024, 1280, 1536, 1792, 2048});
  CHECK(SenanModel::HiddenSizes(10, 10) ==
        std::vector<int>{10, 10, 10, 10, 10});
}

TEST_CASE("zeroed network maps everything to zero") {
  SenanConfig cfg;
  cfg.input_dim = 12;
  cfg.output_dim = 8;
  cfg.h_first = 6;
  cfg.h_last = 10;
  ParameterSet params;
  Rng rng(3);
  SenanModel model(cfg, &params, &rng);
  ZeroAllParams(&params);
  Rng in_rng(5);
  SenanModel::Output out =
      model.Forward(Constant(RandomTensor({7, 12}, &in_rng)));
  for (double v : out.enh->tensor.data) CHECK(v == 0.0);
  for (double v : out.nse->tensor.data) CHECK(v == 0.0);
}

TEST_CASE("the mapping is frame independent") {
  SenanConfig cfg;
  cfg.input_dim = 10;
  cfg.output_dim = 6;
  cfg.h_first = 8;
  cfg.h_last = 8;
  ParameterSet params;
  Rng rng(7);
  SenanModel model(cfg, &params, &rng);
  Rng in_rng(11);
  Tensor x = RandomTensor({5, 10}, &in_rng);
  Tensor permuted({5, 10});
  std::vector<int> perm = {3, 0, 4, 1, 2};
  for (int t = 0; t < 5; ++t)
    for (int j = 0; j < 10; ++j)
      permuted.At(t, j) = x.At(perm[static_cast<size_t>(t)], j);
  SenanModel::Output a = model.Forward(Constant(x));
  SenanModel::Output b = model.Forward(Constant(permuted));
  for (int t = 0; t < 5; ++t)
    for (int j = 0; j < 6; ++j)
      CHECK(b.enh->tensor.At(t, j) ==
            a.enh->tensor.At(perm[static_cast<size_t>(t)], j));
}

TEST_CASE("heads share the trunk but not each other") {
  SenanConfig cfg;
  cfg.input_dim = 10;
  cfg.output_dim = 6;
  ParameterSet params;
  Rng rng(13);
  SenanModel model(cfg, &params, &rng);
  Rng in_rng(17);
  Tensor x = RandomTensor({4, 10}, &in_rng);
  Tensor nse_before = model.Forward(Constant(x)).nse->tensor;
  // perturb the enhancement head only
  params.Get("senan.head_enh.w").value->tensor.data[0] += 0.37;
  Tensor nse_after = model.Forward(Constant(x)).nse->tensor;
  CHECK(nse_after.data == nse_before.data);
}

TEST_CASE("mse loss is the summed squared distance") {
  Rng rng(19);
  Tensor target = RandomTensor({3, 4}, &rng);
  ValuePtr same = MseLoss(Constant(target), target);
  CHECK(same->tensor.ScalarValue() == 0.0);

  Tensor ones = target;
  for (auto &v : ones.data) v += 1.0;
  CHECK(MseLoss(Constant(ones), target)->tensor.ScalarValue() ==
        doctest::Approx(12.0).epsilon(1e-12));

  Tensor y = RandomTensor({3, 4}, &rng);
  double direct = 0.0;
  for (size_t i = 0; i < y.data.size(); ++i) {
    double d = y.data[i] - target.data[i];
    direct += d * d;
  }
  CHECK(MseLoss(Constant(y), target)->tensor.ScalarValue() ==
        doctest::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(MseLoss(Constant(Tensor({2, 2})), target), Error);
}

TEST_CASE("trunk gradients match central differences") {
  SenanConfig cfg;
  cfg.input_dim = 8;
  cfg.output_dim = 5;
  cfg.h_first = 6;
  cfg.h_last = 7;
  ParameterSet params;
  Rng rng(23);
  SenanModel model(cfg, &params, &rng);
  Rng in_rng(29);
  Tensor x = RandomTensor({4, 8}, &in_rng);
  Tensor target = RandomTensor({4, 5}, &in_rng);

  Tensor w1 = params.Get("senan.trunk1.w").value->tensor;
  params.ZeroGrads();
  SenanModel::Output out = model.Forward(Constant(x));
  ValuePtr loss = Add(MseLoss(out.enh, target), MseLoss(out.nse, target));
  Backward(loss);
  Tensor grad = params.Get("senan.trunk1.w").value->grad;
  double eps = 1e-5;
  Rng probe_rng(31);
  for (int probe = 0; probe < 10; ++probe) {
    int idx = probe_rng.UniformInt(0, static_cast<int>(w1.NumEl()) - 1);
    auto eval = [&](double delta) {
      Tensor t = w1;
      t.data[static_cast<size_t>(idx)] += delta;
      params.Get("senan.trunk1.w").value->tensor = t;
      SenanModel::Output o = model.Forward(Constant(x));
      return Add(MseLoss(o.enh, target), MseLoss(o.nse, target))
          ->tensor.ScalarValue();
    };
    double numeric = (eval(eps) - eval(-eps)) / (2 * eps);
    double analytic = grad.data[static_cast<size_t>(idx)];
    double denom = std::max({std::fabs(numeric), std::fabs(analytic), 1e-4});
    CHECK(std::fabs(numeric - analytic) / denom < 1e-5);
  }
  params.Get("senan.trunk1.w").value->tensor = w1;
}

TEST_CASE("one small gradient step does not increase the reconstruction loss") {
  SenanConfig cfg;
  cfg.input_dim = 8;
  cfg.output_dim = 5;
  ParameterSet params;
  Rng rng(37);
  SenanModel model(cfg, &params, &rng);
  Rng in_rng(41);
  Tensor x = RandomTensor({6, 8}, &in_rng);
  Tensor t_enh = RandomTensor({6, 5}, &in_rng);
  Tensor t_nse = RandomTensor({6, 5}, &in_rng);
  auto loss_value = [&] {
    SenanModel::Output out = model.Forward(Constant(x));
    return Add(MseLoss(out.enh, t_enh), MseLoss(out.nse, t_nse));
  };
  params.ZeroGrads();
  ValuePtr before = loss_value();
  Backward(before);
  for (auto &p : params.params())
    for (size_t i = 0; i < p.value->tensor.data.size(); ++i)
      p.value->tensor.data[i] -= 1e-4 * p.value->grad.data[i];
  CHECK(loss_value()->tensor.ScalarValue() <= before->tensor.ScalarValue());
}

// ---------------------------------------------------------------------------
// aggregation
// ---------------------------------------------------------------------------

TEST_CASE("aggregation output dims and frame counts") {
  int d = 6;
  Rng rng(43);
  ParameterSet params;
  Aggregator cur(AggKind::kCur, d, nullptr, nullptr, "");
  Aggregator cont(AggKind::kCont, d, nullptr, nullptr, "");
  Aggregator stat(AggKind::kStat, d, nullptr, nullptr, "");
  Aggregator sat(AggKind::kSat, d, &params, &rng, "agg.test");
  CHECK(cur.OutputDim() == d);
  CHECK(cont.OutputDim() == 3 * d);
  CHECK(stat.OutputDim() == 2 * d);
  CHECK(sat.OutputDim() == d);
  Rng in_rng(47);
  ValuePtr y = Constant(RandomTensor({9, d}, &in_rng));
  for (const Aggregator *agg : {&cur, &cont, &stat, &sat}) {
    ValuePtr out = agg->Apply(y);
    CHECK(out->tensor.Rows() == 9);
    CHECK(out->tensor.Cols() == agg->OutputDim());
  }
  CHECK(cur.Apply(y).get() == y.get());  // identity, gradient included
}

TEST_CASE("context splicing matches explicit neighbor concatenation") {
  Rng rng(53);
  Tensor y = RandomTensor({7, 3}, &rng);
  Aggregator cont(AggKind::kCont, 3, nullptr, nullptr, "");
  Tensor out = cont.Apply(Constant(y))->tensor;
  for (int t = 1; t + 1 < 7; ++t)
    for (int j = 0; j < 3; ++j) {
      CHECK(out.At(t, j) == y.At(t - 1, j));
      CHECK(out.At(t, 3 + j) == y.At(t, j));
      CHECK(out.At(t, 6 + j) == y.At(t + 1, j));
    }
  // constant rows give constant triples; single frame clamps to itself
  Tensor c({1, 3}, {1.0, 2.0, 3.0});
  Tensor single = cont.Apply(Constant(c))->tensor;
  CHECK(single.data == std::vector<double>{1, 2, 3, 1, 2, 3, 1, 2, 3});
}

TEST_CASE("statistics pooling matches a sliding-window recomputation") {
  Rng rng(59);
  int t_frames = 300, d = 4;
  Tensor y = RandomTensor({t_frames, d}, &rng);
  Tensor out = StatPool(Constant(y), 75, 74)->tensor;
  for (int t = 0; t < t_frames; ++t) {
    int lo = std::max(0, t - 75), hi = std::min(t_frames - 1, t + 74);
    for (int j = 0; j < d; ++j) {
      double mean = 0.0;
      for (int r = lo; r <= hi; ++r) mean += y.At(r, j);
      mean /= (hi - lo + 1);
      double var = 0.0;
      for (int r = lo; r <= hi; ++r)
        var += (y.At(r, j) - mean) * (y.At(r, j) - mean);
      var /= (hi - lo + 1);
      CHECK(std::fabs(out.At(t, j) - mean) < 1e-10);
      CHECK(std::fabs(out.At(t, d + j) - var) < 1e-10);
    }
  }
  // closed forms: constant input and a {1,3} window
  Tensor c({5, 1}, {2, 2, 2, 2, 2});
  Tensor cs = StatPool(Constant(c), 75, 74)->tensor;
  for (int t = 0; t < 5; ++t) {
    CHECK(cs.At(t, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::fabs(cs.At(t, 1)) < 1e-12);
  }
  Tensor two({2, 1}, {1, 3});
  Tensor ts = StatPool(Constant(two), 75, 74)->tensor;
  CHECK(ts.At(0, 0) == doctest::Approx(2.0));
  CHECK(ts.At(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("attention aggregation normalizes and reduces to windowed means") {
  int d = 5, t_frames = 12;
  ParameterSet params;
  Rng rng(61);
  Aggregator sat(AggKind::kSat, d, &params, &rng, "agg.sat");
  // zero query/key projections give uniform weights: output is the windowed
  // mean of the value projections
  params.Get("agg.sat.wq").value->tensor.SetZero();
  params.Get("agg.sat.wk").value->tensor.SetZero();
  Rng in_rng(67);
  Tensor y = RandomTensor({t_frames, d}, &in_rng);
  Tensor v_proj =
      MatMul(y, params.Get("agg.sat.wv").value->tensor);
  Tensor out = sat.Apply(Constant(y))->tensor;
  for (int t = 0; t < t_frames; ++t) {
    int lo = std::max(0, t - Aggregator::kSatBack);
    int hi = std::min(t_frames - 1, t + Aggregator::kSatAhead);
    for (int j = 0; j < d; ++j) {
      double mean = 0.0;
      for (int r = lo; r <= hi; ++r) mean += v_proj.At(r, j);
      mean /= (hi - lo + 1);
      CHECK(std::fabs(out.At(t, j) - mean) < 1e-12);
    }
  }
  // identity value projection on constant input passes it through
  ParameterSet params2;
  Rng rng2(71);
  Aggregator sat2(AggKind::kSat, 2, &params2, &rng2, "agg.sat2");
  params2.Get("agg.sat2.wv").value->tensor =
      Tensor({2, 2}, {1, 0, 0, 1});
  Tensor cst({6, 2});
  for (int t = 0; t < 6; ++t) {
    cst.At(t, 0) = 0.4;
    cst.At(t, 1) = -1.1;
  }
  Tensor cout = sat2.Apply(Constant(cst))->tensor;
  for (int t = 0; t < 6; ++t) {
    CHECK(cout.At(t, 0) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(cout.At(t, 1) == doctest::Approx(-1.1).epsilon(1e-12));
  }
}

TEST_CASE("aggregators depend only on their stated windows") {
  Rng rng(73);
  int d = 3, t_frames = 200;
  Tensor y = RandomTensor({t_frames, d}, &rng);
  int t_probe = 100;
  ParameterSet params;
  Aggregator cur(AggKind::kCur, d, nullptr, nullptr, "");
  Aggregator cont(AggKind::kCont, d, nullptr, nullptr, "");
  Aggregator stat(AggKind::kStat, d, nullptr, nullptr, "");
  struct Case {
    const Aggregator *agg;
    int radius_back, radius_ahead;
  };
  for (const Case &c : {Case{&cur, 0, 0}, Case{&cont, 1, 1},
                        Case{&stat, 75, 74}}) {
    Tensor base = c.agg->Apply(Constant(y))->tensor;
    Tensor perturbed = y;
    int far = t_probe + c.radius_ahead + 2;
    for (int j = 0; j < d; ++j) perturbed.At(far, j) += 1.0;
    Tensor after = c.agg->Apply(Constant(perturbed))->tensor;
    for (int j = 0; j < base.Cols(); ++j)
      CHECK(after.At(t_probe, j) == base.At(t_probe, j));
    // and inside the window it must change
    Tensor inside = y;
    inside.At(t_probe, 0) += 1.0;
    Tensor changed = c.agg->Apply(Constant(inside))->tensor;
    bool any = false;
    for (int j = 0; j < base.Cols(); ++j)
      any = any || changed.At(t_probe, j) != base.At(t_probe, j);
    CHECK(any);
  }
}

TEST_CASE("aggregator gradients match central differences") {
  Rng rng(79);
  int d = 3, t_frames = 8;
  Tensor y = RandomTensor({t_frames, d}, &rng);
  ParameterSet params;
  Rng prng(83);
  Aggregator cont(AggKind::kCont, d, nullptr, nullptr, "");
  Aggregator stat(AggKind::kStat, d, nullptr, nullptr, "");
  Aggregator sat(AggKind::kSat, d, &params, &prng, "agg.fd");
  Tensor proj3 = RandomTensor({t_frames, 3 * d}, &rng);
  Tensor proj2 = RandomTensor({t_frames, 2 * d}, &rng);
  Tensor proj1 = RandomTensor({t_frames, d}, &rng);
  CHECK(MaxRelFdError({y}, [&](const auto &v) {
          return SumAll(Mul(cont.Apply(v[0]), Constant(proj3)));
        }) < 1e-5);
  CHECK(MaxRelFdError({y}, [&](const auto &v) {
          return SumAll(Mul(stat.Apply(v[0]), Constant(proj2)));
        }) < 1e-5);
  CHECK(MaxRelFdError({y}, [&](const auto &v) {
          return SumAll(Mul(sat.Apply(v[0]), Constant(proj1)));
        }) < 1e-5);
  // SAT projection parameters get gradients too
  params.ZeroGrads();
  Backward(SumAll(sat.Apply(Variable(y))));
  for (const char *name : {"agg.fd.wq", "agg.fd.wk", "agg.fd.wv"}) {
    double norm = 0.0;
    for (double g : params.Get(name).value->grad.data) norm += g * g;
    CHECK(norm > 0.0);
  }
}

// ---------------------------------------------------------------------------
// acoustic model
// ---------------------------------------------------------------------------

TEST_CASE("input concatenation follows the stream order") {
  Rng rng(89);
  Tensor nsy = RandomTensor({5, 48}, &rng);
  Tensor enh = RandomTensor({5, 120}, &rng);
  Tensor nse = RandomTensor({5, 80}, &rng);
  ValuePtr x =
      BuildInput(Constant(nsy), Constant(enh), Constant(nse));
  CHECK(x->tensor.Cols() == 248);
  for (int j = 0; j < 48; ++j) CHECK(x->tensor.At(2, j) == nsy.At(2, j));
  for (int j = 0; j < 120; ++j)
    CHECK(x->tensor.At(2, 48 + j) == enh.At(2, j));
  for (int j = 0; j < 80; ++j)
    CHECK(x->tensor.At(2, 168 + j) == nse.At(2, j));

  // disabled streams reduce to the noisy features alone
  ValuePtr reduced = BuildInput(Constant(nsy), nullptr, nullptr);
  CHECK(reduced->tensor.data == nsy.data);

  CHECK_THROWS_AS(
      BuildInput(Constant(nsy), Constant(RandomTensor({4, 120}, &rng)),
                 nullptr),
      Error);
}

namespace {

AmConfig SmallAmConfig() {
  AmConfig cfg;
  cfg.n_layers = 2;
  cfg.hidden = 10;
  cfg.bottleneck = 4;
  cfg.final_bottleneck = 6;
  cfg.n_states = 5;
  return cfg;
}

}  // namespace

TEST_CASE("zeroed single layer with zero bypass gives zero logits") {
  AmConfig cfg = SmallAmConfig();
  cfg.n_layers = 1;
  cfg.bypass_scale = 0.0;
  InputFrameSpec spec;
  spec.d_nsy = 8;
  spec.acoustic_dim = 6;
  ParameterSet params;
  Rng rng(97);
  AcousticModel am(cfg, spec, &params, &rng);
  ZeroAllParams(&params);
  Rng in_rng(101);
  ValuePtr logits = am.Forward(Constant(RandomTensor({4, 8}, &in_rng)));
  for (double v : logits->tensor.data) CHECK(v == 0.0);
}

TEST_CASE("single-frame utterances pass through every arch") {
  for (AmArch arch : {AmArch::kTdnnf, AmArch::kCnnTdnnf}) {
    AmConfig cfg = SmallAmConfig();
    cfg.arch = arch;
    cfg.conv_filters = {2};
    InputFrameSpec spec;
    spec.d_nsy = 8;
    spec.acoustic_dim = 6;
    ParameterSet params;
    Rng rng(103);
    AcousticModel am(cfg, spec, &params, &rng);
    Rng in_rng(107);
    ValuePtr logits = am.Forward(Constant(RandomTensor({1, 8}, &in_rng)));
    CHECK(logits->tensor.Rows() == 1);
    CHECK(logits->tensor.Cols() == 5);
    CHECK(logits->tensor.AllFinite());
  }
}

TEST_CASE("full-stack gradients match central differences") {
  for (AmArch arch : {AmArch::kTdnnf, AmArch::kCnnTdnnf}) {
    AmConfig cfg = SmallAmConfig();
    cfg.arch = arch;
    cfg.conv_filters = {2, 3};
    InputFrameSpec spec;
    spec.d_nsy = 7;
    spec.acoustic_dim = 5;
    ParameterSet params;
    Rng rng(109);
    AcousticModel am(cfg, spec, &params, &rng);
    Rng in_rng(113);
    Tensor x = RandomTensor({6, 7}, &in_rng);
    Tensor proj = RandomTensor({6, 5}, &in_rng);
    // input gradient
    CHECK(MaxRelFdError({x}, [&](const auto &v) {
            return SumAll(Mul(am.Forward(v[0]), Constant(proj)));
          }) < 1e-4);
    // every parameter receives a finite-difference-consistent gradient
    params.ZeroGrads();
    Backward(SumAll(Mul(am.Forward(Constant(x)), Constant(proj))));
    Rng probe_rng(127);
    double eps = 1e-5;
    for (auto &p : params.params()) {
      int idx = probe_rng.UniformInt(
          0, static_cast<int>(p.value->tensor.NumEl()) - 1);
      double saved = p.value->tensor.data[static_cast<size_t>(idx)];
      auto eval = [&](double delta) {
        p.value->tensor.data[static_cast<size_t>(idx)] = saved + delta;
        double out = SumAll(Mul(am.Forward(Constant(x)), Constant(proj)))
                         ->tensor.ScalarValue();
        p.value->tensor.data[static_cast<size_t>(idx)] = saved;
        return out;
      };
      double numeric = (eval(eps) - eval(-eps)) / (2 * eps);
      double analytic =
          p.value->grad.NumEl() == 0
              ? 0.0
              : p.value->grad.data[static_cast<size_t>(idx)];
      double denom =
          std::max({std::fabs(numeric), std::fabs(analytic), 1e-4});
      INFO(p.name);
      CHECK(std::fabs(numeric - analytic) / denom < 1e-4);
    }
  }
}

TEST_CASE("logits depend only on the splice receptive field") {
  AmConfig cfg = SmallAmConfig();
  cfg.renorm = false;  // utterance-level renorm is deliberately non-local
  InputFrameSpec spec;
  spec.d_nsy = 6;
  spec.acoustic_dim = 4;
  ParameterSet params;
  Rng rng(131);
  AcousticModel am(cfg, spec, &params, &rng);
  Rng in_rng(137);
  Tensor x = RandomTensor({20, 6}, &in_rng);
  Tensor base = am.Forward(Constant(x))->tensor;
  int radius = cfg.n_layers;  // offsets {-1,0,1} per layer
  int probe = 10;
  Tensor far = x;
  for (int j = 0; j < 6; ++j) far.At(probe + radius + 1, j) += 0.5;
  Tensor after = am.Forward(Constant(far))->tensor;
  for (int j = 0; j < 5; ++j)
    CHECK(after.At(probe, j) == base.At(probe, j));
  Tensor near = x;
  near.At(probe + radius, 0) += 0.5;
  Tensor changed = am.Forward(Constant(near))->tensor;
  bool any = false;
  for (int j = 0; j < 5; ++j)
    any = any || changed.At(probe, j) != base.At(probe, j);
  CHECK(any);
}

TEST_CASE("output shape is frames x states for both archs") {
  for (AmArch arch : {AmArch::kTdnnf, AmArch::kCnnTdnnf}) {
    AmConfig cfg = SmallAmConfig();
    cfg.arch = arch;
    cfg.conv_filters = {2};
    InputFrameSpec spec;
    spec.d_nsy = 9;
    spec.d_enh = 4;
    spec.d_nse = 3;
    spec.acoustic_dim = 6;
    ParameterSet params;
    Rng rng(139);
    AcousticModel am(cfg, spec, &params, &rng);
    Rng in_rng(149);
    ValuePtr logits = am.Forward(Constant(RandomTensor({11, 16}, &in_rng)));
    CHECK(logits->tensor.Rows() == 11);
    CHECK(logits->tensor.Cols() == cfg.n_states);
  }
}

TEST_CASE("constrained factors stay near the constraint surface") {
  AmConfig cfg = SmallAmConfig();
  InputFrameSpec spec;
  spec.d_nsy = 8;
  spec.acoustic_dim = 6;
  ParameterSet params;
  Rng rng(151);
  AcousticModel am(cfg, spec, &params, &rng);
  int constrained = 0;
  for (const auto &p : params.params())
    if (p.constraint == Constraint::kSemiOrthogonal) {
      CHECK(SemiOrthogonalResidual(p.value->tensor) < 1e-3);
      ++constrained;
    }
  CHECK(constrained == cfg.n_layers + 1);  // per-layer linear + final factor
}
