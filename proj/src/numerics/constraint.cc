// numerics/constraint.cc

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

#include "numerics/constraint.h"

#include <cmath>

namespace senan {

namespace {

bool AllZero(const Tensor &m) {
  for (double v : m.data)
    if (v != 0.0) return false;
  return true;
}

double EstimateScale(const Tensor &p) {
  double tr_p = Trace(p);
  double tr_pp = 0.0;
  for (double v : p.data) tr_pp += v * v;  // tr(P P) for symmetric P
  return tr_pp / tr_p;
}

}  // namespace

Tensor SemiOrthogonalStep(const Tensor &m, bool floating_scale) {
  int r = m.Rows(), c = m.Cols();
  SENAN_CHECK(r <= c, ErrorCode::kShapeMismatch,
              "semi-orthogonal step requires rows <= cols, got " +
                  m.ShapeString());
  SENAN_CHECK(!AllZero(m), ErrorCode::kDegenerateMatrix,
              "semi-orthogonal step on all-zero matrix");
  Tensor p = MatMulNT(m, m);
  double scale = floating_scale ? EstimateScale(p) : 1.0;
  for (int i = 0; i < r; ++i) p.At(i, i) -= scale;
  Tensor update = MatMul(p, m);
  Tensor out = m;
  double step = -1.0 / (2.0 * scale);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] += step * update.data[i];
  return out;
}

double SemiOrthogonalResidual(const Tensor &m) {
  const Tensor *mm = &m;
  Tensor tposed;
  if (m.Rows() > m.Cols()) {
    tposed = Transpose(m);
    mm = &tposed;
  }
  Tensor p = MatMulNT(*mm, *mm);
  double scale = EstimateScale(p);
  for (int i = 0; i < p.Rows(); ++i) p.At(i, i) -= scale;
  double target = scale * std::sqrt(static_cast<double>(p.Rows()));
  return FrobeniusNorm(p) / target;
}

void ApplySemiOrthogonalInPlace(Tensor *m, bool floating_scale) {
  if (m->Rows() > m->Cols()) {
    Tensor t = Transpose(*m);
    *m = Transpose(SemiOrthogonalStep(t, floating_scale));
  } else {
    *m = SemiOrthogonalStep(*m, floating_scale);
  }
}

}  // namespace senan
