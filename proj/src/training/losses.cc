// training/losses.cc

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

#include "training/losses.h"

#include <cmath>

namespace senan {

ValuePtr CeLoss(const ValuePtr &logits, const std::vector<int> &alignment) {
  const Tensor &t = logits->tensor;
  int t_frames = t.Rows(), k = t.Cols();
  SENAN_CHECK(static_cast<int>(alignment.size()) == t_frames,
              ErrorCode::kShapeMismatch,
              "alignment length does not match frame count");
  for (int s : alignment)
    SENAN_CHECK(s >= 0 && s < k, ErrorCode::kLabelOutOfRange,
                "alignment label out of range");
  ValuePtr lsm = LogSoftmax(logits);
  double total = 0.0;
  for (int i = 0; i < t_frames; ++i)
    total -= lsm->tensor.At(i, alignment[static_cast<size_t>(i)]);
  std::vector<int> labels = alignment;
  return MakeOp(Tensor::Scalar(total), {lsm},
                [labels](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  double gv = g.data[0];
                  for (size_t i = 0; i < labels.size(); ++i)
                    padj[0]->At(static_cast<int>(i),
                                labels[i]) -= gv;
                });
}

ValuePtr JointLoss(const ValuePtr &ce, const ValuePtr &fmmi,
                   const ValuePtr &l_enh, const ValuePtr &l_nse,
                   const LossWeights &w) {
  for (const ValuePtr &v : {ce, fmmi, l_enh, l_nse})
    SENAN_CHECK(v->tensor.IsScalar(), ErrorCode::kNotScalar,
                "joint loss components must be scalars");
  ValuePtr loss = Add(Scale(ce, w.alpha), Scale(fmmi, -1.0));
  if (w.beta != 0.0)
    loss = Add(loss, Scale(Add(l_enh, l_nse), w.beta));
  return loss;
}

double LrAt(int64_t step, int64_t total_steps, double lr_initial,
            double lr_final) {
  if (total_steps <= 0) return lr_initial;
  double frac =
      static_cast<double>(step) / static_cast<double>(total_steps);
  return lr_initial * std::pow(lr_final / lr_initial, frac);
}

}  // namespace senan
