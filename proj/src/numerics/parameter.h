// numerics/parameter.h

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

#ifndef SENAN_NUMERICS_PARAMETER_H_
#define SENAN_NUMERICS_PARAMETER_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "numerics/autodiff.h"
#include "util/rng.h"

namespace senan {

enum class Constraint { kNone, kSemiOrthogonal };

struct Parameter {
  std::string name;
  ValuePtr value;  // requires_grad, mutated only between forward passes
  Constraint constraint = Constraint::kNone;
};

// Owns every trainable parameter of a model; names are unique. Behaves as
// the single writer during optimization.
class ParameterSet {
 public:
  // Registers a new parameter; throws on duplicate names. Constrained
  // parameters are projected at creation until near the constraint surface.
  ValuePtr Create(const std::string &name, Tensor init,
                  Constraint constraint = Constraint::kNone);

  // Gaussian init scaled by 1/sqrt(fan_in).
  ValuePtr CreateGaussian(const std::string &name, std::vector<int> shape,
                          int fan_in, Rng *rng,
                          Constraint constraint = Constraint::kNone);

  const std::vector<Parameter> &params() const { return params_; }
  std::vector<Parameter> &params() { return params_; }
  bool Has(const std::string &name) const { return index_.count(name) != 0; }
  Parameter &Get(const std::string &name);

  void ZeroGrads();
  // One projection step on every semi-orthogonally constrained parameter.
  void ApplyConstraints(bool floating_scale = true);

  // Named-parameter archive, one record per parameter: name, shape,
  // row-major 64-bit floats. Records are sorted by name.
  void Save(const std::string &path) const;
  void Load(const std::string &path);  // by name, shapes must match

 private:
  std::vector<Parameter> params_;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace senan

#endif  // SENAN_NUMERICS_PARAMETER_H_
