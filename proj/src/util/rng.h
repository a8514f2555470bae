// util/rng.h

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

#ifndef SENAN_UTIL_RNG_H_
#define SENAN_UTIL_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace senan {

// Deterministic random source. Distributions are implemented here rather
// than with std:: distribution objects, whose output is implementation
// defined; every draw is reproducible from the seed alone.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t NextU64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double Uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Inclusive on both ends.
  int UniformInt(int lo, int hi);

  // Standard normal via Box-Muller.
  double Gaussian();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent stream seed from a base seed and a tag. Used to make
// per-utterance / per-speaker draws independent of generation order.
uint64_t DeriveSeed(uint64_t base, uint64_t tag);
uint64_t DeriveSeed(uint64_t base, std::string_view tag);

}  // namespace senan

#endif  // SENAN_UTIL_RNG_H_
