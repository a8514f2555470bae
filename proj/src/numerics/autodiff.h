// numerics/autodiff.h

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

#ifndef SENAN_NUMERICS_AUTODIFF_H_
#define SENAN_NUMERICS_AUTODIFF_H_

#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "numerics/tensor.h"

namespace senan {

class Value;
using ValuePtr = std::shared_ptr<Value>;

// Rule that distributes the adjoint of an op's output onto its parents.
// parent_adj[i] is the accumulator for parents[i], or nullptr when that
// parent does not require gradient.
using BackpropFn = std::function<void(const Tensor &out_adj,
                                      const std::vector<Tensor *> &parent_adj)>;

// Node of a reverse-mode differentiation graph. The graph is acyclic by
// construction (ops only reference existing nodes). A graph is confined to
// one thread; tensors themselves are immutable once built and may be shared.
class Value {
 public:
  Tensor tensor;
  Tensor grad;  // lazily allocated, accumulated across Backward() calls
  bool requires_grad = false;
  std::vector<ValuePtr> parents;
  BackpropFn backprop;

  void AccumulateGrad(const Tensor &adj) {
    if (grad.NumEl() == 0) grad = Tensor(tensor.shape);
    grad.AddInPlace(adj);
  }
  void ZeroGrad() {
    if (grad.NumEl() != 0) grad.SetZero();
  }
};

// Leaf constructors.
ValuePtr Constant(Tensor t);
ValuePtr Variable(Tensor t);  // requires_grad = true

// Generic op constructor; the extension point used by the model modules for
// custom differentiable ops. requires_grad of the result is the OR over
// parents; when no parent requires gradient the node is demoted to a leaf.
ValuePtr MakeOp(Tensor out, std::vector<ValuePtr> parents, BackpropFn fn);

enum class EwOp { kAdd, kSub, kMul, kRelu, kLog, kExp };

ValuePtr Elementwise(EwOp op, const ValuePtr &a, const ValuePtr &b = nullptr);
ValuePtr Add(const ValuePtr &a, const ValuePtr &b);
ValuePtr SubV(const ValuePtr &a, const ValuePtr &b);
ValuePtr Mul(const ValuePtr &a, const ValuePtr &b);
ValuePtr Relu(const ValuePtr &x);
ValuePtr ElemLog(const ValuePtr &x);
ValuePtr ElemExp(const ValuePtr &x);

ValuePtr MatMulV(const ValuePtr &a, const ValuePtr &b);

// Row-wise log softmax of a T x K matrix, stabilized by max subtraction.
ValuePtr LogSoftmax(const ValuePtr &z);

// Concatenation along axis 0 or 1 of 2-D tensors.
ValuePtr Concat(const std::vector<ValuePtr> &parts, int axis);

ValuePtr TransposeV(const ValuePtr &x);
ValuePtr Reshape(const ValuePtr &x, std::vector<int> shape);
ValuePtr GatherRows(const ValuePtr &x, std::vector<int> rows);
ValuePtr SliceCols(const ValuePtr &x, int begin, int end);
ValuePtr Scale(const ValuePtr &x, double a);
// Adds a 1 x D bias row to every row of a T x D matrix.
ValuePtr AddRow(const ValuePtr &x, const ValuePtr &row);
ValuePtr SumAll(const ValuePtr &x);  // scalar

// Frame splicing with clamp-to-edge: output row t is the concatenation of
// rows clamp(t + off) over the given offsets. Shared by context aggregation
// and time-delay layers.
ValuePtr SpliceFrames(const ValuePtr &x, const std::vector<int> &offsets);

// Adjoints of every gradient-requiring node reachable from `loss`, computed
// into a scratch map; node .grad fields are untouched. Pure and repeatable.
std::unordered_map<Value *, Tensor> ComputeAdjoints(const ValuePtr &loss);

// Accumulates d(loss)/d(node) into .grad for every reachable node that
// requires gradient. Grads are never reset here; the caller zeroes them.
void Backward(const ValuePtr &loss);

}  // namespace senan

#endif  // SENAN_NUMERICS_AUTODIFF_H_
