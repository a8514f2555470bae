// aggregation/aggregation.h

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

#ifndef SENAN_AGGREGATION_AGGREGATION_H_
#define SENAN_AGGREGATION_AGGREGATION_H_

#include <string>

#include "numerics/parameter.h"

namespace senan {

// Per-frame context summarizers turning frame-wise network outputs into
// context-bearing features:
//   CUR  - current frame only (identity), dim D
//   CONT - one preceding and one following frame appended, dim 3D
//   STAT - mean and population variance over a 150-frame window, dim 2D
//   SAT  - single-head dot-product attention over 5 preceding and
//          2 following frames, dim D
// Boundaries clamp to the utterance edges for all kinds.
enum class AggKind { kCur, kCont, kStat, kSat };

AggKind ParseAggKind(const std::string &name);
std::string AggKindName(AggKind kind);

class Aggregator {
 public:
  // SAT registers its projection parameters under `prefix`; the other kinds
  // are parameter-free and ignore params/rng.
  Aggregator(AggKind kind, int dim, ParameterSet *params, Rng *rng,
             const std::string &prefix);

  AggKind kind() const { return kind_; }
  int OutputDim() const;
  ValuePtr Apply(const ValuePtr &y) const;

  static constexpr int kStatWindow = 150;  // 75 back, 74 ahead
  static constexpr int kSatBack = 5;
  static constexpr int kSatAhead = 2;

 private:
  AggKind kind_;
  int dim_;
  ValuePtr wq_, wk_, wv_;  // SAT only
};

// Windowed mean/variance pooling as a single differentiable op; exposed for
// direct testing against a sliding-window recomputation.
ValuePtr StatPool(const ValuePtr &y, int back, int ahead);

}  // namespace senan

#endif  // SENAN_AGGREGATION_AGGREGATION_H_
