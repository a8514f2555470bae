// numerics/parameter.cc

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

#include "numerics/parameter.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "numerics/constraint.h"
#include "util/io.h"

namespace senan {

namespace {
constexpr char kMagic[4] = {'S', 'N', 'C', 'K'};
constexpr int32_t kVersion = 1;
constexpr int kInitProjectionSteps = 12;
}  // namespace

ValuePtr ParameterSet::Create(const std::string &name, Tensor init,
                              Constraint constraint) {
  SENAN_CHECK(!Has(name), ErrorCode::kInvalidConfig,
              "duplicate parameter name: " + name);
  if (constraint == Constraint::kSemiOrthogonal) {
    for (int i = 0; i < kInitProjectionSteps; ++i)
      ApplySemiOrthogonalInPlace(&init);
  }
  Parameter p;
  p.name = name;
  p.value = Variable(std::move(init));
  p.constraint = constraint;
  index_[name] = params_.size();
  params_.push_back(std::move(p));
  return params_.back().value;
}

ValuePtr ParameterSet::CreateGaussian(const std::string &name,
                                      std::vector<int> shape, int fan_in,
                                      Rng *rng, Constraint constraint) {
  Tensor t(std::move(shape));
  double scale = 1.0 / std::sqrt(static_cast<double>(std::max(1, fan_in)));
  for (double &v : t.data) v = scale * rng->Gaussian();
  return Create(name, std::move(t), constraint);
}

Parameter &ParameterSet::Get(const std::string &name) {
  auto it = index_.find(name);
  SENAN_CHECK(it != index_.end(), ErrorCode::kInvalidConfig,
              "no such parameter: " + name);
  return params_[it->second];
}

void ParameterSet::ZeroGrads() {
  for (auto &p : params_) p.value->ZeroGrad();
}

void ParameterSet::ApplyConstraints(bool floating_scale) {
  for (auto &p : params_)
    if (p.constraint == Constraint::kSemiOrthogonal)
      ApplySemiOrthogonalInPlace(&p.value->tensor, floating_scale);
}

void ParameterSet::Save(const std::string &path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) ThrowError(ErrorCode::kIoError, "cannot write checkpoint: " + path);
  os.write(kMagic, 4);
  WriteLe<int32_t>(os, kVersion);
  std::vector<const Parameter *> sorted;
  sorted.reserve(params_.size());
  for (const auto &p : params_) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(),
            [](const Parameter *a, const Parameter *b) {
              return a->name < b->name;
            });
  WriteLe<int32_t>(os, static_cast<int32_t>(sorted.size()));
  for (const Parameter *p : sorted) {
    WriteLe<int32_t>(os, static_cast<int32_t>(p->name.size()));
    os.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
    const Tensor &t = p->value->tensor;
    WriteLe<int32_t>(os, static_cast<int32_t>(t.shape.size()));
    for (int d : t.shape) WriteLe<int32_t>(os, d);
    os.write(reinterpret_cast<const char *>(t.data.data()),
             static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  }
  if (!os) ThrowError(ErrorCode::kIoError, "checkpoint write failed: " + path);
}

void ParameterSet::Load(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) ThrowError(ErrorCode::kIoError, "cannot read checkpoint: " + path);
  char magic[4];
  is.read(magic, 4);
  SENAN_CHECK(is && std::equal(magic, magic + 4, kMagic), ErrorCode::kIoError,
              "not a checkpoint file: " + path);
  int32_t version = ReadLe<int32_t>(is);
  SENAN_CHECK(version == kVersion, ErrorCode::kIoError,
              "unsupported checkpoint version");
  int32_t count = ReadLe<int32_t>(is);
  size_t loaded = 0;
  for (int32_t i = 0; i < count; ++i) {
    int32_t name_len = ReadLe<int32_t>(is);
    SENAN_CHECK(name_len > 0 && name_len < 4096, ErrorCode::kIoError,
                "corrupt checkpoint record");
    std::string name(static_cast<size_t>(name_len), '\0');
    is.read(name.data(), name_len);
    int32_t ndims = ReadLe<int32_t>(is);
    SENAN_CHECK(ndims >= 1 && ndims <= 8, ErrorCode::kIoError,
                "corrupt checkpoint record");
    std::vector<int> shape(static_cast<size_t>(ndims));
    int64_t numel = 1;
    for (auto &d : shape) {
      d = ReadLe<int32_t>(is);
      SENAN_CHECK(d > 0, ErrorCode::kIoError, "corrupt checkpoint record");
      numel *= d;
    }
    std::vector<double> values(static_cast<size_t>(numel));
    is.read(reinterpret_cast<char *>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    SENAN_CHECK(static_cast<bool>(is), ErrorCode::kIoError,
                "checkpoint truncated: " + path);
    Parameter &p = Get(name);
    SENAN_CHECK(p.value->tensor.shape == shape, ErrorCode::kIoError,
                "checkpoint shape mismatch for " + name);
    p.value->tensor.data = std::move(values);
    ++loaded;
  }
  SENAN_CHECK(loaded == params_.size(), ErrorCode::kIoError,
              "checkpoint is missing parameters");
}

}  // namespace senan
