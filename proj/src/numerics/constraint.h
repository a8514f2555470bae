// numerics/constraint.h

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

#ifndef SENAN_NUMERICS_CONSTRAINT_H_
#define SENAN_NUMERICS_CONSTRAINT_H_

#include "numerics/tensor.h"

namespace senan {

// One projection step towards a semi-orthogonal matrix (M M^T = c I) for an
// r x c matrix with r <= c. With floating_scale the target scale c* is
// estimated from traces, c* = tr(P P) / tr(P) with P = M M^T; otherwise
// c* = 1. The update is
//   M <- M - 1/(2 c*) (P - c* I) M.
// Repeated application drives M M^T towards c* I.
Tensor SemiOrthogonalStep(const Tensor &m, bool floating_scale = true);

// Relative deviation ||M M^T - c* I||_F / ||c* I||_F used to monitor the
// constraint; c* estimated as in the floating-scale step.
double SemiOrthogonalResidual(const Tensor &m);

// Applies the step to a parameter tensor of either orientation: matrices
// with rows > cols are constrained through their transpose.
void ApplySemiOrthogonalInPlace(Tensor *m, bool floating_scale = true);

}  // namespace senan

#endif  // SENAN_NUMERICS_CONSTRAINT_H_
