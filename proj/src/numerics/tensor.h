// numerics/tensor.h

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

#ifndef SENAN_NUMERICS_TENSOR_H_
#define SENAN_NUMERICS_TENSOR_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "util/error.h"

namespace senan {

// Dense row-major tensor of doubles. Most of the code base works with 2-D
// tensors (frames x dims); 1-D tensors appear for vectors and scalars are
// shape {1}.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s);  // zero-filled
  Tensor(std::vector<int> s, std::vector<double> values);

  static Tensor Scalar(double v) { return Tensor({1}, {v}); }

  int64_t NumEl() const { return static_cast<int64_t>(data.size()); }
  int NumDims() const { return static_cast<int>(shape.size()); }
  bool SameShape(const Tensor &other) const { return shape == other.shape; }
  bool IsScalar() const { return NumEl() == 1; }
  double ScalarValue() const;

  int Rows() const;
  int Cols() const;
  double &At(int r, int c) { return data[static_cast<size_t>(r) * Cols() + c]; }
  double At(int r, int c) const {
    return data[static_cast<size_t>(r) * Cols() + c];
  }

  void AddInPlace(const Tensor &other);  // this += other
  void ScaleInPlace(double a);
  void SetZero();
  bool AllFinite() const;

  std::string ShapeString() const;
};

// Plain (non-differentiating) tensor math used by the projection step,
// optimizer internals and tests.
Tensor MatMul(const Tensor &a, const Tensor &b);
Tensor MatMulNT(const Tensor &a, const Tensor &b);  // a * b^T
Tensor MatMulTN(const Tensor &a, const Tensor &b);  // a^T * b
Tensor Transpose(const Tensor &a);
double Trace(const Tensor &a);
Tensor Sub(const Tensor &a, const Tensor &b);
double FrobeniusNorm(const Tensor &a);

// Low-level accumulating kernels, c += op(a, b). Shapes are the caller's
// responsibility.
void MatMulAccum(const double *a, const double *b, double *c, int m, int k,
                 int n);
void MatMulNTAccum(const double *a, const double *b, double *c, int m, int k,
                   int n);
void MatMulTNAccum(const double *a, const double *b, double *c, int m, int k,
                   int n);

// Debug text format: first line "shape: d1 d2 ...", then row-major values
// with 17 significant digits, one row (last axis) per line.
void DumpTensor(std::ostream &os, const Tensor &t);
Tensor ParseTensor(std::istream &is);

}  // namespace senan

#endif  // SENAN_NUMERICS_TENSOR_H_
