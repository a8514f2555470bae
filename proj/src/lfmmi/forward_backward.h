// lfmmi/forward_backward.h

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

#ifndef SENAN_LFMMI_FORWARD_BACKWARD_H_
#define SENAN_LFMMI_FORWARD_BACKWARD_H_

#include "lfmmi/graph.h"
#include "numerics/tensor.h"

namespace senan {

// log(e^a + e^b) with -inf treated as zero mass.
double LogAdd(double a, double b);

struct FbResult {
  double logz;
  Tensor gamma;  // T x K per-frame label occupancies, rows sum to 1
};

// Log-semiring forward and backward over the frame-synchronous expansion of
// the graph against T x K log acoustic scores. Throws NoPath when no
// complete path exists.
FbResult ForwardBackward(const Graph &g, const Tensor &logp);

// Forward pass only; alive_mass (if non-null) receives the total probability
// of length-T prefixes that have not yet terminated, used by conservation
// checks. Returns logZ (may be -inf; no throw).
double ForwardLogZ(const Graph &g, const Tensor &logp,
                   double *alive_mass = nullptr);

struct DecodeResult {
  double best_logp;
  std::vector<int> labels;  // length T
  std::vector<int> phones;  // collapsed at token-starting arcs
};

// Max-semiring analogue of the forward pass with backpointers.
DecodeResult ViterbiDecode(const Graph &g, const Tensor &logp);

}  // namespace senan

#endif  // SENAN_LFMMI_FORWARD_BACKWARD_H_
