// aggregation/aggregation.cc

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

#include "aggregation/aggregation.h"

#include <algorithm>
#include <cmath>

namespace senan {

AggKind ParseAggKind(const std::string &name) {
  if (name == "cur") return AggKind::kCur;
  if (name == "cont") return AggKind::kCont;
  if (name == "stat") return AggKind::kStat;
  if (name == "sat") return AggKind::kSat;
  ThrowError(ErrorCode::kInvalidConfig, "unknown aggregation kind: " + name);
}

std::string AggKindName(AggKind kind) {
  switch (kind) {
    case AggKind::kCur:
      return "cur";
    case AggKind::kCont:
      return "cont";
    case AggKind::kStat:
      return "stat";
    case AggKind::kSat:
      return "sat";
  }
  return "?";
}

Aggregator::Aggregator(AggKind kind, int dim, ParameterSet *params, Rng *rng,
                       const std::string &prefix)
    : kind_(kind), dim_(dim) {
  if (kind_ == AggKind::kSat) {
    SENAN_CHECK(params != nullptr && rng != nullptr, ErrorCode::kInvalidConfig,
                "SAT aggregation needs a parameter set");
    wq_ = params->CreateGaussian(prefix + ".wq", {dim, dim}, dim, rng);
    wk_ = params->CreateGaussian(prefix + ".wk", {dim, dim}, dim, rng);
    wv_ = params->CreateGaussian(prefix + ".wv", {dim, dim}, dim, rng);
  }
}

int Aggregator::OutputDim() const {
  switch (kind_) {
    case AggKind::kCur:
      return dim_;
    case AggKind::kCont:
      return 3 * dim_;
    case AggKind::kStat:
      return 2 * dim_;
    case AggKind::kSat:
      return dim_;
  }
  return dim_;
}

ValuePtr StatPool(const ValuePtr &y, int back, int ahead) {
  const Tensor &in = y->tensor;
  int t_frames = in.Rows(), d = in.Cols();
  Tensor out({t_frames, 2 * d});
  // prefix sums over rows of y and y^2
  std::vector<double> psum(static_cast<size_t>(t_frames + 1) * d, 0.0);
  std::vector<double> psq(static_cast<size_t>(t_frames + 1) * d, 0.0);
  for (int t = 0; t < t_frames; ++t)
    for (int j = 0; j < d; ++j) {
      double v = in.At(t, j);
      psum[static_cast<size_t>(t + 1) * d + j] =
          psum[static_cast<size_t>(t) * d + j] + v;
      psq[static_cast<size_t>(t + 1) * d + j] =
          psq[static_cast<size_t>(t) * d + j] + v * v;
    }
  for (int t = 0; t < t_frames; ++t) {
    int lo = std::max(0, t - back);
    int hi = std::min(t_frames - 1, t + ahead);
    double inv_w = 1.0 / (hi - lo + 1);
    for (int j = 0; j < d; ++j) {
      double s = psum[static_cast<size_t>(hi + 1) * d + j] -
                 psum[static_cast<size_t>(lo) * d + j];
      double sq = psq[static_cast<size_t>(hi + 1) * d + j] -
                  psq[static_cast<size_t>(lo) * d + j];
      double mean = s * inv_w;
      out.At(t, j) = mean;
      out.At(t, d + j) = std::max(0.0, sq * inv_w - mean * mean);
    }
  }
  Tensor input = in;
  return MakeOp(
      std::move(out), {y},
      [input, t_frames, d, back, ahead](const Tensor &g,
                                        const std::vector<Tensor *> &padj) {
        if (!padj[0]) return;
        // d mean[t]/d y[j] = 1/W; d var[t]/d y[j] = 2 (y[j] - mean[t]) / W
        for (int t = 0; t < t_frames; ++t) {
          int lo = std::max(0, t - back);
          int hi = std::min(t_frames - 1, t + ahead);
          double inv_w = 1.0 / (hi - lo + 1);
          for (int j = 0; j < d; ++j) {
            double gm = g.At(t, j) * inv_w;
            double gv = g.At(t, d + j) * inv_w * 2.0;
            if (gm == 0.0 && gv == 0.0) continue;
            double mean = 0.0;
            if (gv != 0.0) {
              for (int r = lo; r <= hi; ++r) mean += input.At(r, j);
              mean *= inv_w;
            }
            for (int r = lo; r <= hi; ++r)
              padj[0]->At(r, j) += gm + gv * (input.At(r, j) - mean);
          }
        }
      });
}

namespace {

ValuePtr SatAttention(const ValuePtr &y, const ValuePtr &wq,
                      const ValuePtr &wk, const ValuePtr &wv) {
  int t_frames = y->tensor.Rows();
  int dk = wq->tensor.Cols();
  ValuePtr q_all = MatMulV(y, wq);
  ValuePtr k_all = MatMulV(y, wk);
  ValuePtr v_all = MatMulV(y, wv);
  double inv_sqrt_dk = 1.0 / std::sqrt(static_cast<double>(dk));
  std::vector<ValuePtr> rows;
  rows.reserve(static_cast<size_t>(t_frames));
  for (int t = 0; t < t_frames; ++t) {
    int lo = std::max(0, t - Aggregator::kSatBack);
    int hi = std::min(t_frames - 1, t + Aggregator::kSatAhead);
    std::vector<int> window;
    window.reserve(static_cast<size_t>(hi - lo + 1));
    for (int j = lo; j <= hi; ++j) window.push_back(j);
    ValuePtr q = GatherRows(q_all, {t});
    ValuePtr keys = GatherRows(k_all, window);
    ValuePtr values = GatherRows(v_all, window);
    ValuePtr scores = Scale(MatMulV(q, TransposeV(keys)), inv_sqrt_dk);
    ValuePtr weights = ElemExp(LogSoftmax(scores));
    rows.push_back(MatMulV(weights, values));
  }
  return Concat(rows, 0);
}

}  // namespace

ValuePtr Aggregator::Apply(const ValuePtr &y) const {
  SENAN_CHECK(y->tensor.Cols() == dim_, ErrorCode::kShapeMismatch,
              "aggregator input dim mismatch");
  switch (kind_) {
    case AggKind::kCur:
      return y;
    case AggKind::kCont:
      return SpliceFrames(y, {-1, 0, 1});
    case AggKind::kStat:
      return StatPool(y, kStatWindow / 2, kStatWindow / 2 - 1);
    case AggKind::kSat:
      return SatAttention(y, wq_, wk_, wv_);
  }
  ThrowError(ErrorCode::kInvalidConfig, "unknown aggregation kind");
}

}  // namespace senan
