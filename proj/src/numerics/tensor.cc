// numerics/tensor.cc

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

#include "numerics/tensor.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace senan {

namespace {

int64_t ShapeNumEl(const std::vector<int> &shape) {
  int64_t n = 1;
  for (int d : shape) {
    SENAN_CHECK(d > 0, ErrorCode::kShapeMismatch, "extents must be positive");
    n *= d;
  }
  return n;
}

}  // namespace

Tensor::Tensor(std::vector<int> s) : shape(std::move(s)) {
  data.assign(static_cast<size_t>(ShapeNumEl(shape)), 0.0);
}

Tensor::Tensor(std::vector<int> s, std::vector<double> values)
    : shape(std::move(s)), data(std::move(values)) {
  SENAN_CHECK(ShapeNumEl(shape) == static_cast<int64_t>(data.size()),
              ErrorCode::kShapeMismatch,
              "value count does not match shape " + ShapeString());
}

double Tensor::ScalarValue() const {
  SENAN_CHECK(IsScalar(), ErrorCode::kNotScalar, "tensor is not a scalar");
  return data[0];
}

int Tensor::Rows() const {
  SENAN_CHECK(NumDims() == 2, ErrorCode::kShapeMismatch,
              "expected 2-D tensor, got shape " + ShapeString());
  return shape[0];
}

int Tensor::Cols() const {
  SENAN_CHECK(NumDims() == 2, ErrorCode::kShapeMismatch,
              "expected 2-D tensor, got shape " + ShapeString());
  return shape[1];
}

void Tensor::AddInPlace(const Tensor &other) {
  SENAN_CHECK(SameShape(other), ErrorCode::kShapeMismatch,
              "shape mismatch in accumulate: " + ShapeString() + " vs " +
                  other.ShapeString());
  for (size_t i = 0; i < data.size(); ++i) data[i] += other.data[i];
}

void Tensor::ScaleInPlace(double a) {
  for (double &v : data) v *= a;
}

void Tensor::SetZero() {
  for (double &v : data) v = 0.0;
}

bool Tensor::AllFinite() const {
  for (double v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

std::string Tensor::ShapeString() const {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

void MatMulAccum(const double *a, const double *b, double *c, int m, int k,
                 int n) {
  for (int i = 0; i < m; ++i) {
    const double *arow = a + static_cast<size_t>(i) * k;
    double *crow = c + static_cast<size_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      double aip = arow[p];
      if (aip == 0.0) continue;
      const double *brow = b + static_cast<size_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void MatMulNTAccum(const double *a, const double *b, double *c, int m, int k,
                   int n) {
  // c[m x n] += a[m x k] * b[n x k]^T; dot products over contiguous rows.
  for (int i = 0; i < m; ++i) {
    const double *arow = a + static_cast<size_t>(i) * k;
    double *crow = c + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double *brow = b + static_cast<size_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] += acc;
    }
  }
}

void MatMulTNAccum(const double *a, const double *b, double *c, int m, int k,
                   int n) {
  // c[m x n] += a[k x m]^T * b[k x n].
  for (int p = 0; p < k; ++p) {
    const double *arow = a + static_cast<size_t>(p) * m;
    const double *brow = b + static_cast<size_t>(p) * n;
    for (int i = 0; i < m; ++i) {
      double api = arow[i];
      if (api == 0.0) continue;
      double *crow = c + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += api * brow[j];
    }
  }
}

namespace {

void CheckMatMulShapes(const Tensor &a, const Tensor &b, int a_inner,
                       int b_inner) {
  SENAN_CHECK(a.NumDims() == 2 && b.NumDims() == 2, ErrorCode::kShapeMismatch,
              "matmul requires 2-D tensors");
  SENAN_CHECK(a_inner == b_inner, ErrorCode::kShapeMismatch,
              "inner extents differ: " + a.ShapeString() + " vs " +
                  b.ShapeString());
}

}  // namespace

Tensor MatMul(const Tensor &a, const Tensor &b) {
  CheckMatMulShapes(a, b, a.shape[1], b.shape[0]);
  Tensor c({a.shape[0], b.shape[1]});
  MatMulAccum(a.data.data(), b.data.data(), c.data.data(), a.shape[0],
              a.shape[1], b.shape[1]);
  return c;
}

Tensor MatMulNT(const Tensor &a, const Tensor &b) {
  CheckMatMulShapes(a, b, a.shape[1], b.shape[1]);
  Tensor c({a.shape[0], b.shape[0]});
  MatMulNTAccum(a.data.data(), b.data.data(), c.data.data(), a.shape[0],
                a.shape[1], b.shape[0]);
  return c;
}

Tensor MatMulTN(const Tensor &a, const Tensor &b) {
  CheckMatMulShapes(a, b, a.shape[0], b.shape[0]);
  Tensor c({a.shape[1], b.shape[1]});
  MatMulTNAccum(a.data.data(), b.data.data(), c.data.data(), a.shape[1],
                a.shape[0], b.shape[1]);
  return c;
}

Tensor Transpose(const Tensor &a) {
  SENAN_CHECK(a.NumDims() == 2, ErrorCode::kShapeMismatch,
              "transpose requires a 2-D tensor");
  Tensor t({a.shape[1], a.shape[0]});
  for (int i = 0; i < a.shape[0]; ++i)
    for (int j = 0; j < a.shape[1]; ++j) t.At(j, i) = a.At(i, j);
  return t;
}

double Trace(const Tensor &a) {
  SENAN_CHECK(a.NumDims() == 2 && a.shape[0] == a.shape[1],
              ErrorCode::kShapeMismatch, "trace requires a square matrix");
  double s = 0.0;
  for (int i = 0; i < a.shape[0]; ++i) s += a.At(i, i);
  return s;
}

Tensor Sub(const Tensor &a, const Tensor &b) {
  SENAN_CHECK(a.SameShape(b), ErrorCode::kShapeMismatch,
              "shape mismatch in sub");
  Tensor c = a;
  for (size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
  return c;
}

double FrobeniusNorm(const Tensor &a) {
  double s = 0.0;
  for (double v : a.data) s += v * v;
  return std::sqrt(s);
}

void DumpTensor(std::ostream &os, const Tensor &t) {
  os << "shape:";
  for (int d : t.shape) os << " " << d;
  os << "\n";
  int row_len = t.shape.empty() ? 1 : t.shape.back();
  char buf[40];
  for (int64_t i = 0; i < t.NumEl(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", t.data[static_cast<size_t>(i)]);
    os << buf;
    os << (((i + 1) % row_len == 0) ? "\n" : " ");
  }
}

Tensor ParseTensor(std::istream &is) {
  std::string word;
  is >> word;
  SENAN_CHECK(word == "shape:", ErrorCode::kIoError,
              "tensor dump must start with 'shape:'");
  std::string line;
  std::getline(is, line);
  std::istringstream shape_ss(line);
  std::vector<int> shape;
  int d;
  while (shape_ss >> d) shape.push_back(d);
  Tensor t(shape);
  for (int64_t i = 0; i < t.NumEl(); ++i) {
    SENAN_CHECK(static_cast<bool>(is >> t.data[static_cast<size_t>(i)]),
                ErrorCode::kIoError, "tensor dump truncated");
  }
  return t;
}

}  // namespace senan
