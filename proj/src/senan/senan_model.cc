// senan/senan_model.cc

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

#include "senan/senan_model.h"

#include <cmath>

namespace senan {

void SenanConfig::Validate() const {
  SENAN_CHECK(input_dim >= 1 && output_dim >= 1, ErrorCode::kInvalidConfig,
              "bad senan dimensions");
  SENAN_CHECK(h_first >= 1 && h_last >= h_first, ErrorCode::kInvalidConfig,
              "hidden sizes must be nondecreasing");
}

std::vector<int> SenanModel::HiddenSizes(int h_first, int h_last) {
  std::vector<int> sizes(5);
  for (int i = 1; i <= 5; ++i)
    sizes[static_cast<size_t>(i - 1)] = static_cast<int>(
        std::lround(h_first + (i - 1) * (h_last - h_first) / 4.0));
  return sizes;
}

SenanModel::SenanModel(const SenanConfig &cfg, ParameterSet *params, Rng *rng,
                       const std::string &prefix)
    : cfg_(cfg) {
  cfg_.Validate();
  auto sizes = HiddenSizes(cfg_.h_first, cfg_.h_last);
  int in = cfg_.input_dim;
  for (size_t i = 0; i < sizes.size(); ++i) {
    int out = sizes[i];
    std::string base = prefix + ".trunk" + std::to_string(i + 1);
    trunk_w_.push_back(
        params->CreateGaussian(base + ".w", {in, out}, in, rng));
    trunk_b_.push_back(params->Create(base + ".b", Tensor({1, out})));
    in = out;
  }
  head_enh_w_ = params->CreateGaussian(prefix + ".head_enh.w",
                                       {in, cfg_.output_dim}, in, rng);
  head_enh_b_ = params->Create(prefix + ".head_enh.b",
                               Tensor({1, cfg_.output_dim}));
  head_nse_w_ = params->CreateGaussian(prefix + ".head_nse.w",
                                       {in, cfg_.output_dim}, in, rng);
  head_nse_b_ = params->Create(prefix + ".head_nse.b",
                               Tensor({1, cfg_.output_dim}));
}

SenanModel::Output SenanModel::Forward(const ValuePtr &x_nsy) const {
  SENAN_CHECK(x_nsy->tensor.Cols() == cfg_.input_dim,
              ErrorCode::kShapeMismatch,
              "senan input dimension mismatch: got " +
                  x_nsy->tensor.ShapeString());
  ValuePtr h = x_nsy;
  for (size_t i = 0; i < trunk_w_.size(); ++i)
    h = Relu(AddRow(MatMulV(h, trunk_w_[i]), trunk_b_[i]));
  Output out;
  out.enh = AddRow(MatMulV(h, head_enh_w_), head_enh_b_);
  out.nse = AddRow(MatMulV(h, head_nse_w_), head_nse_b_);
  return out;
}

ValuePtr MseLoss(const ValuePtr &y, const Tensor &target) {
  SENAN_CHECK(y->tensor.SameShape(target), ErrorCode::kShapeMismatch,
              "mse: prediction and target shapes differ");
  ValuePtr diff = SubV(y, Constant(target));
  return SumAll(Mul(diff, diff));
}

}  // namespace senan
