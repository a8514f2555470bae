// lfmmi/mmi_loss.cc

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

#include "lfmmi/mmi_loss.h"

namespace senan {

ValuePtr MmiScore(const ValuePtr &logits, const Graph &num, const Graph &den) {
  FbResult fb_num = ForwardBackward(num, logits->tensor);
  FbResult fb_den = ForwardBackward(den, logits->tensor);
  Tensor occ_diff = fb_num.gamma;
  for (size_t i = 0; i < occ_diff.data.size(); ++i)
    occ_diff.data[i] -= fb_den.gamma.data[i];
  double f = fb_num.logz - fb_den.logz;
  return MakeOp(Tensor::Scalar(f), {logits},
                [occ_diff](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  double gv = g.data[0];
                  for (size_t i = 0; i < occ_diff.data.size(); ++i)
                    padj[0]->data[i] += gv * occ_diff.data[i];
                });
}

}  // namespace senan
