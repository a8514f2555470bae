// features/speaker.cc

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

#include "features/speaker.h"

#include <cmath>

#include "util/error.h"
#include "util/rng.h"

namespace senan {

void SpeakerTable::Register(const std::string &speaker) {
  if (Registered(speaker)) return;
  Rng rng(DeriveSeed(seed_, speaker));
  std::vector<double> v(static_cast<size_t>(dim_));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto &x : v) {
      x = rng.Gaussian();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  double inv = 1.0 / std::sqrt(norm2);
  for (auto &x : v) x *= inv;
  table_.emplace(speaker, std::move(v));
}

const std::vector<double> &SpeakerTable::Embedding(
    const std::string &speaker) const {
  auto it = table_.find(speaker);
  SENAN_CHECK(it != table_.end(), ErrorCode::kUnknownSpeaker,
              "speaker not registered: " + speaker);
  return it->second;
}

}  // namespace senan
