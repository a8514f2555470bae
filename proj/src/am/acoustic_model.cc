// am/acoustic_model.cc

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

#include "am/acoustic_model.h"

#include <cmath>

namespace senan {

AmArch ParseAmArch(const std::string &name) {
  if (name == "tdnnf") return AmArch::kTdnnf;
  if (name == "cnn_tdnnf") return AmArch::kCnnTdnnf;
  ThrowError(ErrorCode::kInvalidConfig, "unknown am arch: " + name);
}

std::string AmArchName(AmArch arch) {
  return arch == AmArch::kTdnnf ? "tdnnf" : "cnn_tdnnf";
}

void AmConfig::Validate() const {
  SENAN_CHECK(n_layers >= 1 && hidden >= 1 && final_bottleneck >= 1 &&
                  n_states >= 1,
              ErrorCode::kInvalidConfig, "bad acoustic model extents");
  SENAN_CHECK(bottleneck < hidden, ErrorCode::kInvalidConfig,
              "bottleneck must be smaller than the hidden width");
  SENAN_CHECK(bypass_scale >= 0.0 && bypass_scale <= 1.0,
              ErrorCode::kInvalidConfig, "bypass scale must lie in [0, 1]");
  SENAN_CHECK(!time_offsets.empty(), ErrorCode::kInvalidConfig,
              "need at least one time offset");
  if (arch == AmArch::kCnnTdnnf)
    SENAN_CHECK(!conv_filters.empty(), ErrorCode::kInvalidConfig,
                "CNN front end needs at least one conv layer");
}

ValuePtr BuildInput(const ValuePtr &x_nsy, const ValuePtr &x_enh,
                    const ValuePtr &x_nse) {
  std::vector<ValuePtr> parts;
  parts.push_back(x_nsy);
  if (x_enh) parts.push_back(x_enh);
  if (x_nse) parts.push_back(x_nse);
  int t_frames = x_nsy->tensor.Rows();
  for (const auto &p : parts)
    SENAN_CHECK(p->tensor.Rows() == t_frames, ErrorCode::kFrameCountMismatch,
                "input streams disagree on frame count");
  if (parts.size() == 1) return x_nsy;
  return Concat(parts, 1);
}

ValuePtr BatchRenorm(const ValuePtr &x, double eps) {
  const Tensor &in = x->tensor;
  int t_frames = in.Rows(), d = in.Cols();
  std::vector<double> inv_rms(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    double m = 0.0;
    for (int t = 0; t < t_frames; ++t) m += in.At(t, j) * in.At(t, j);
    inv_rms[static_cast<size_t>(j)] =
        1.0 / std::sqrt(m / t_frames + eps);
  }
  Tensor out = in;
  for (int t = 0; t < t_frames; ++t)
    for (int j = 0; j < d; ++j) out.At(t, j) *= inv_rms[static_cast<size_t>(j)];
  Tensor input = in;
  return MakeOp(
      std::move(out), {x},
      [input, inv_rms, t_frames, d](const Tensor &g,
                                    const std::vector<Tensor *> &padj) {
        if (!padj[0]) return;
        for (int j = 0; j < d; ++j) {
          double r = inv_rms[static_cast<size_t>(j)];
          double s = 0.0;
          for (int t = 0; t < t_frames; ++t) s += g.At(t, j) * input.At(t, j);
          double c = r * r * r * s / t_frames;
          for (int t = 0; t < t_frames; ++t)
            padj[0]->At(t, j) += r * g.At(t, j) - c * input.At(t, j);
        }
      });
}

ValuePtr Im2Col3x3(const ValuePtr &x, int height, int channels) {
  const Tensor &in = x->tensor;
  int t_frames = in.Rows();
  SENAN_CHECK(in.Cols() == height * channels, ErrorCode::kShapeMismatch,
              "grid dims do not match height*channels");
  auto clamp = [](int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); };
  Tensor out({t_frames * height, 9 * channels});
  for (int t = 0; t < t_frames; ++t)
    for (int h = 0; h < height; ++h) {
      int row = t * height + h;
      for (int dt = -1; dt <= 1; ++dt)
        for (int dh = -1; dh <= 1; ++dh) {
          int p = (dt + 1) * 3 + (dh + 1);
          int st = clamp(t + dt, t_frames);
          int sh = clamp(h + dh, height);
          for (int c = 0; c < channels; ++c)
            out.At(row, p * channels + c) = in.At(st, sh * channels + c);
        }
    }
  return MakeOp(
      std::move(out), {x},
      [t_frames, height, channels, clamp](const Tensor &g,
                                          const std::vector<Tensor *> &padj) {
        if (!padj[0]) return;
        for (int t = 0; t < t_frames; ++t)
          for (int h = 0; h < height; ++h) {
            int row = t * height + h;
            for (int dt = -1; dt <= 1; ++dt)
              for (int dh = -1; dh <= 1; ++dh) {
                int p = (dt + 1) * 3 + (dh + 1);
                int st = clamp(t + dt, t_frames);
                int sh = clamp(h + dh, height);
                for (int c = 0; c < channels; ++c)
                  padj[0]->At(st, sh * channels + c) +=
                      g.At(row, p * channels + c);
              }
          }
      });
}

AcousticModel::AcousticModel(const AmConfig &cfg, const InputFrameSpec &spec,
                             ParameterSet *params, Rng *rng,
                             const std::string &prefix)
    : cfg_(cfg), spec_(spec) {
  cfg_.Validate();
  SENAN_CHECK(spec_.d_nsy >= 1 && spec_.TotalDim() >= 1,
              ErrorCode::kInvalidConfig, "bad input stream dims");
  int d_in = spec_.TotalDim();
  if (cfg_.arch == AmArch::kCnnTdnnf) {
    SENAN_CHECK(spec_.acoustic_dim >= 3 && spec_.acoustic_dim <= spec_.d_nsy,
                ErrorCode::kInvalidConfig, "bad acoustic grid height");
    int c_in = 1;
    for (size_t i = 0; i < cfg_.conv_filters.size(); ++i) {
      int f = cfg_.conv_filters[i];
      ConvLayer layer;
      layer.c_in = c_in;
      layer.filters = f;
      std::string base = prefix + ".conv" + std::to_string(i + 1);
      layer.weight = params->CreateGaussian(base + ".w", {9 * c_in, f},
                                            9 * c_in, rng);
      layer.bias = params->Create(base + ".b", Tensor({1, f}));
      conv_.push_back(std::move(layer));
      c_in = f;
    }
    d_in = spec_.acoustic_dim * c_in + (spec_.TotalDim() - spec_.acoustic_dim);
  }

  int k = static_cast<int>(cfg_.time_offsets.size());
  int in = d_in;
  for (int i = 0; i < cfg_.n_layers; ++i) {
    TdnnfLayer layer;
    std::string base = prefix + ".tdnnf" + std::to_string(i + 1);
    layer.linear =
        params->CreateGaussian(base + ".linear", {k * in, cfg_.bottleneck},
                               k * in, rng, Constraint::kSemiOrthogonal);
    layer.affine = params->CreateGaussian(base + ".affine",
                                          {cfg_.bottleneck, cfg_.hidden},
                                          cfg_.bottleneck, rng);
    layer.bias = params->Create(base + ".b", Tensor({1, cfg_.hidden}));
    layer.bypass = in == cfg_.hidden;
    layers_.push_back(std::move(layer));
    in = cfg_.hidden;
  }
  final_linear_ = params->CreateGaussian(prefix + ".final.linear",
                                         {cfg_.hidden, cfg_.final_bottleneck},
                                         cfg_.hidden, rng,
                                         Constraint::kSemiOrthogonal);
  out_w_ = params->CreateGaussian(prefix + ".final.affine",
                                  {cfg_.final_bottleneck, cfg_.n_states},
                                  cfg_.final_bottleneck, rng);
  out_b_ = params->Create(prefix + ".final.b", Tensor({1, cfg_.n_states}));
}

ValuePtr AcousticModel::Forward(const ValuePtr &x_in) const {
  SENAN_CHECK(x_in->tensor.Cols() == spec_.TotalDim(),
              ErrorCode::kShapeMismatch,
              "acoustic model input dim mismatch: got " +
                  x_in->tensor.ShapeString());
  int t_frames = x_in->tensor.Rows();
  ValuePtr h = x_in;
  if (cfg_.arch == AmArch::kCnnTdnnf) {
    ValuePtr grid = SliceCols(x_in, 0, spec_.acoustic_dim);
    ValuePtr rest = spec_.acoustic_dim < spec_.TotalDim()
                        ? SliceCols(x_in, spec_.acoustic_dim, spec_.TotalDim())
                        : nullptr;
    for (const ConvLayer &layer : conv_) {
      ValuePtr cols = Im2Col3x3(grid, spec_.acoustic_dim, layer.c_in);
      ValuePtr z = Relu(AddRow(MatMulV(cols, layer.weight), layer.bias));
      if (cfg_.renorm) z = BatchRenorm(z);
      grid = Reshape(z, {t_frames, spec_.acoustic_dim * layer.filters});
    }
    h = rest ? Concat({grid, rest}, 1) : grid;
  }
  for (const TdnnfLayer &layer : layers_) {
    ValuePtr spliced = SpliceFrames(h, cfg_.time_offsets);
    ValuePtr z = AddRow(MatMulV(MatMulV(spliced, layer.linear), layer.affine),
                        layer.bias);
    z = Relu(z);
    if (cfg_.renorm) z = BatchRenorm(z);
    if (layer.bypass && cfg_.bypass_scale > 0.0)
      z = Add(Scale(h, cfg_.bypass_scale),
              Scale(z, 1.0 - cfg_.bypass_scale));
    h = z;
  }
  return AddRow(MatMulV(MatMulV(h, final_linear_), out_w_), out_b_);
}

}  // namespace senan
