// numerics/autodiff.cc

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

#include "numerics/autodiff.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace senan {

ValuePtr Constant(Tensor t) {
  auto v = std::make_shared<Value>();
  v->tensor = std::move(t);
  return v;
}

ValuePtr Variable(Tensor t) {
  auto v = Constant(std::move(t));
  v->requires_grad = true;
  return v;
}

ValuePtr MakeOp(Tensor out, std::vector<ValuePtr> parents, BackpropFn fn) {
  auto v = std::make_shared<Value>();
  v->tensor = std::move(out);
  bool any = false;
  for (const auto &p : parents) any = any || p->requires_grad;
  if (any) {
    v->requires_grad = true;
    v->parents = std::move(parents);
    v->backprop = std::move(fn);
  }
  return v;
}

namespace {

void CheckSameShape(const ValuePtr &a, const ValuePtr &b, const char *op) {
  SENAN_CHECK(a->tensor.SameShape(b->tensor), ErrorCode::kShapeMismatch,
              std::string(op) + ": operand shapes differ, " +
                  a->tensor.ShapeString() + " vs " + b->tensor.ShapeString());
}

int ClampIndex(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace

ValuePtr Add(const ValuePtr &a, const ValuePtr &b) {
  CheckSameShape(a, b, "add");
  Tensor out = a->tensor;
  out.AddInPlace(b->tensor);
  return MakeOp(std::move(out), {a, b},
                [](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (padj[0]) padj[0]->AddInPlace(g);
                  if (padj[1]) padj[1]->AddInPlace(g);
                });
}

ValuePtr SubV(const ValuePtr &a, const ValuePtr &b) {
  CheckSameShape(a, b, "sub");
  Tensor out = a->tensor;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b->tensor.data[i];
  return MakeOp(std::move(out), {a, b},
                [](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (padj[0]) padj[0]->AddInPlace(g);
                  if (padj[1])
                    for (size_t i = 0; i < g.data.size(); ++i)
                      padj[1]->data[i] -= g.data[i];
                });
}

ValuePtr Mul(const ValuePtr &a, const ValuePtr &b) {
  CheckSameShape(a, b, "mul");
  Tensor out = a->tensor;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] *= b->tensor.data[i];
  Tensor at = a->tensor, bt = b->tensor;
  return MakeOp(std::move(out), {a, b},
                [at, bt](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (padj[0])
                    for (size_t i = 0; i < g.data.size(); ++i)
                      padj[0]->data[i] += g.data[i] * bt.data[i];
                  if (padj[1])
                    for (size_t i = 0; i < g.data.size(); ++i)
                      padj[1]->data[i] += g.data[i] * at.data[i];
                });
}

ValuePtr Relu(const ValuePtr &x) {
  Tensor out = x->tensor;
  for (double &v : out.data) v = v > 0.0 ? v : 0.0;
  Tensor in = x->tensor;
  return MakeOp(std::move(out), {x},
                [in](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (size_t i = 0; i < g.data.size(); ++i)
                    if (in.data[i] > 0.0) padj[0]->data[i] += g.data[i];
                });
}

ValuePtr ElemLog(const ValuePtr &x) {
  Tensor out = x->tensor;
  for (double &v : out.data) {
    SENAN_CHECK(v > 0.0, ErrorCode::kDomainError, "log of non-positive value");
    v = std::log(v);
  }
  Tensor in = x->tensor;
  return MakeOp(std::move(out), {x},
                [in](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (size_t i = 0; i < g.data.size(); ++i)
                    padj[0]->data[i] += g.data[i] / in.data[i];
                });
}

ValuePtr ElemExp(const ValuePtr &x) {
  Tensor out = x->tensor;
  for (double &v : out.data) v = std::exp(v);
  Tensor res = out;
  return MakeOp(std::move(out), {x},
                [res](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (size_t i = 0; i < g.data.size(); ++i)
                    padj[0]->data[i] += g.data[i] * res.data[i];
                });
}

ValuePtr Elementwise(EwOp op, const ValuePtr &a, const ValuePtr &b) {
  switch (op) {
    case EwOp::kAdd:
      return Add(a, b);
    case EwOp::kSub:
      return SubV(a, b);
    case EwOp::kMul:
      return Mul(a, b);
    case EwOp::kRelu:
      return Relu(a);
    case EwOp::kLog:
      return ElemLog(a);
    case EwOp::kExp:
      return ElemExp(a);
  }
  ThrowError(ErrorCode::kDomainError, "unknown elementwise op");
}

ValuePtr MatMulV(const ValuePtr &a, const ValuePtr &b) {
  Tensor out = MatMul(a->tensor, b->tensor);
  Tensor at = a->tensor, bt = b->tensor;
  return MakeOp(
      std::move(out), {a, b},
      [at, bt](const Tensor &g, const std::vector<Tensor *> &padj) {
        int m = at.shape[0], k = at.shape[1], n = bt.shape[1];
        // a_adj += g * b^T ; b_adj += a^T * g
        if (padj[0])
          MatMulNTAccum(g.data.data(), bt.data.data(), padj[0]->data.data(), m,
                        n, k);
        if (padj[1])
          MatMulTNAccum(at.data.data(), g.data.data(), padj[1]->data.data(), k,
                        m, n);
      });
}

ValuePtr LogSoftmax(const ValuePtr &z) {
  const Tensor &in = z->tensor;
  int t_rows = in.Rows(), k = in.Cols();
  Tensor out = in;
  for (int t = 0; t < t_rows; ++t) {
    double m = out.At(t, 0);
    for (int j = 1; j < k; ++j) m = std::max(m, out.At(t, j));
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum += std::exp(out.At(t, j) - m);
    double lse = m + std::log(sum);
    for (int j = 0; j < k; ++j) out.At(t, j) -= lse;
  }
  Tensor probs = out;
  for (double &v : probs.data) v = std::exp(v);
  return MakeOp(std::move(out), {z},
                [probs, t_rows, k](const Tensor &g,
                                   const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (int t = 0; t < t_rows; ++t) {
                    double gsum = 0.0;
                    for (int j = 0; j < k; ++j) gsum += g.At(t, j);
                    for (int j = 0; j < k; ++j)
                      padj[0]->At(t, j) += g.At(t, j) - probs.At(t, j) * gsum;
                  }
                });
}

ValuePtr Concat(const std::vector<ValuePtr> &parts, int axis) {
  SENAN_CHECK(!parts.empty(), ErrorCode::kShapeMismatch,
              "concat of zero parts");
  SENAN_CHECK(axis == 0 || axis == 1, ErrorCode::kShapeMismatch,
              "concat axis must be 0 or 1");
  int rows0 = parts[0]->tensor.Rows(), cols0 = parts[0]->tensor.Cols();
  int total = 0;
  for (const auto &p : parts) {
    const Tensor &t = p->tensor;
    if (axis == 0)
      SENAN_CHECK(t.Cols() == cols0, ErrorCode::kShapeMismatch,
                  "concat: column extents differ");
    else
      SENAN_CHECK(t.Rows() == rows0, ErrorCode::kShapeMismatch,
                  "concat: row extents differ");
    total += t.shape[axis];
  }
  Tensor out(axis == 0 ? std::vector<int>{total, cols0}
                       : std::vector<int>{rows0, total});
  std::vector<int> extents;
  extents.reserve(parts.size());
  if (axis == 0) {
    int r = 0;
    for (const auto &p : parts) {
      const Tensor &t = p->tensor;
      std::copy(t.data.begin(), t.data.end(),
                out.data.begin() + static_cast<size_t>(r) * cols0);
      r += t.Rows();
      extents.push_back(t.Rows());
    }
  } else {
    int c = 0;
    for (const auto &p : parts) {
      const Tensor &t = p->tensor;
      for (int i = 0; i < rows0; ++i)
        std::copy(t.data.begin() + static_cast<size_t>(i) * t.Cols(),
                  t.data.begin() + static_cast<size_t>(i + 1) * t.Cols(),
                  out.data.begin() + static_cast<size_t>(i) * total + c);
      c += t.Cols();
      extents.push_back(t.Cols());
    }
  }
  return MakeOp(
      std::move(out), parts,
      [axis, extents, rows0, total](const Tensor &g,
                                    const std::vector<Tensor *> &padj) {
        if (axis == 0) {
          int cols = g.Cols();
          int r = 0;
          for (size_t p = 0; p < extents.size(); ++p) {
            if (padj[p])
              for (int i = 0; i < extents[p]; ++i)
                for (int j = 0; j < cols; ++j)
                  padj[p]->At(i, j) += g.At(r + i, j);
            r += extents[p];
          }
        } else {
          int c = 0;
          for (size_t p = 0; p < extents.size(); ++p) {
            if (padj[p])
              for (int i = 0; i < rows0; ++i)
                for (int j = 0; j < extents[p]; ++j)
                  padj[p]->At(i, j) += g.At(i, c + j);
            c += extents[p];
          }
        }
        (void)total;
      });
}

ValuePtr TransposeV(const ValuePtr &x) {
  return MakeOp(Transpose(x->tensor), {x},
                [](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (padj[0]) padj[0]->AddInPlace(Transpose(g));
                });
}

ValuePtr Reshape(const ValuePtr &x, std::vector<int> shape) {
  Tensor out(shape, x->tensor.data);
  std::vector<int> in_shape = x->tensor.shape;
  return MakeOp(std::move(out), {x},
                [in_shape](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (size_t i = 0; i < g.data.size(); ++i)
                    padj[0]->data[i] += g.data[i];
                });
}

ValuePtr GatherRows(const ValuePtr &x, std::vector<int> rows) {
  const Tensor &in = x->tensor;
  int cols = in.Cols();
  Tensor out({static_cast<int>(rows.size()), cols});
  for (size_t i = 0; i < rows.size(); ++i) {
    SENAN_CHECK(rows[i] >= 0 && rows[i] < in.Rows(), ErrorCode::kShapeMismatch,
                "gather row index out of range");
    std::copy(in.data.begin() + static_cast<size_t>(rows[i]) * cols,
              in.data.begin() + static_cast<size_t>(rows[i] + 1) * cols,
              out.data.begin() + i * cols);
  }
  return MakeOp(std::move(out), {x},
                [rows, cols](const Tensor &g,
                             const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (size_t i = 0; i < rows.size(); ++i)
                    for (int j = 0; j < cols; ++j)
                      padj[0]->At(rows[i], j) += g.At(static_cast<int>(i), j);
                });
}

ValuePtr SliceCols(const ValuePtr &x, int begin, int end) {
  const Tensor &in = x->tensor;
  SENAN_CHECK(0 <= begin && begin < end && end <= in.Cols(),
              ErrorCode::kShapeMismatch, "bad column slice");
  int rows = in.Rows(), w = end - begin;
  Tensor out({rows, w});
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < w; ++j) out.At(i, j) = in.At(i, begin + j);
  return MakeOp(std::move(out), {x},
                [begin, w, rows](const Tensor &g,
                                 const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < w; ++j)
                      padj[0]->At(i, begin + j) += g.At(i, j);
                });
}

ValuePtr Scale(const ValuePtr &x, double a) {
  Tensor out = x->tensor;
  out.ScaleInPlace(a);
  return MakeOp(std::move(out), {x},
                [a](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (size_t i = 0; i < g.data.size(); ++i)
                    padj[0]->data[i] += a * g.data[i];
                });
}

ValuePtr AddRow(const ValuePtr &x, const ValuePtr &row) {
  const Tensor &in = x->tensor;
  const Tensor &r = row->tensor;
  SENAN_CHECK(r.NumDims() == 2 && r.Rows() == 1 && r.Cols() == in.Cols(),
              ErrorCode::kShapeMismatch, "bias row shape mismatch");
  int rows = in.Rows(), cols = in.Cols();
  Tensor out = in;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.At(i, j) += r.At(0, j);
  return MakeOp(std::move(out), {x, row},
                [rows, cols](const Tensor &g,
                             const std::vector<Tensor *> &padj) {
                  if (padj[0]) padj[0]->AddInPlace(g);
                  if (padj[1])
                    for (int i = 0; i < rows; ++i)
                      for (int j = 0; j < cols; ++j)
                        padj[1]->At(0, j) += g.At(i, j);
                });
}

ValuePtr SumAll(const ValuePtr &x) {
  double s = 0.0;
  for (double v : x->tensor.data) s += v;
  return MakeOp(Tensor::Scalar(s), {x},
                [](const Tensor &g, const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  double gv = g.data[0];
                  for (double &v : padj[0]->data) v += gv;
                });
}

ValuePtr SpliceFrames(const ValuePtr &x, const std::vector<int> &offsets) {
  const Tensor &in = x->tensor;
  int t_rows = in.Rows(), d = in.Cols();
  int k = static_cast<int>(offsets.size());
  SENAN_CHECK(k >= 1, ErrorCode::kShapeMismatch, "splice needs offsets");
  Tensor out({t_rows, k * d});
  for (int t = 0; t < t_rows; ++t)
    for (int o = 0; o < k; ++o) {
      int src = ClampIndex(t + offsets[o], t_rows);
      std::copy(in.data.begin() + static_cast<size_t>(src) * d,
                in.data.begin() + static_cast<size_t>(src + 1) * d,
                out.data.begin() + static_cast<size_t>(t) * k * d +
                    static_cast<size_t>(o) * d);
    }
  std::vector<int> offs = offsets;
  return MakeOp(std::move(out), {x},
                [offs, t_rows, d, k](const Tensor &g,
                                     const std::vector<Tensor *> &padj) {
                  if (!padj[0]) return;
                  for (int t = 0; t < t_rows; ++t)
                    for (int o = 0; o < k; ++o) {
                      int src = ClampIndex(t + offs[o], t_rows);
                      for (int j = 0; j < d; ++j)
                        padj[0]->At(src, j) += g.At(t, o * d + j);
                    }
                });
}

std::unordered_map<Value *, Tensor> ComputeAdjoints(const ValuePtr &loss) {
  SENAN_CHECK(loss->tensor.IsScalar(), ErrorCode::kNotScalar,
              "backward requires a scalar loss, got shape " +
                  loss->tensor.ShapeString());
  // Iterative post-order over the gradient-requiring closure.
  std::vector<Value *> topo;
  std::unordered_set<Value *> visited;
  struct Frame {
    Value *node;
    size_t next_parent;
  };
  std::vector<Frame> stack;
  if (loss->requires_grad) {
    stack.push_back({loss.get(), 0});
    visited.insert(loss.get());
  }
  while (!stack.empty()) {
    Frame &f = stack.back();
    if (f.next_parent < f.node->parents.size()) {
      Value *p = f.node->parents[f.next_parent++].get();
      if (p->requires_grad && !visited.count(p)) {
        visited.insert(p);
        stack.push_back({p, 0});
      }
    } else {
      topo.push_back(f.node);
      stack.pop_back();
    }
  }

  std::unordered_map<Value *, Tensor> adj;
  adj.reserve(topo.size());
  Tensor seed(loss->tensor.shape);
  seed.data[0] = 1.0;
  adj[loss.get()] = std::move(seed);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    Value *node = *it;
    if (!node->backprop) continue;
    auto found = adj.find(node);
    if (found == adj.end()) continue;
    std::vector<Tensor *> padj(node->parents.size(), nullptr);
    for (size_t i = 0; i < node->parents.size(); ++i) {
      Value *p = node->parents[i].get();
      if (!p->requires_grad) continue;
      auto ins = adj.try_emplace(p, Tensor(p->tensor.shape));
      padj[i] = &ins.first->second;
    }
    node->backprop(found->second, padj);
  }
  return adj;
}

void Backward(const ValuePtr &loss) {
  SENAN_CHECK(loss->tensor.IsScalar(), ErrorCode::kNotScalar,
              "backward requires a scalar loss");
  if (!loss->requires_grad) return;
  auto adj = ComputeAdjoints(loss);
  for (auto &entry : adj) entry.first->AccumulateGrad(entry.second);
}

}  // namespace senan
