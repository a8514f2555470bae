// features/speaker.h

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

#ifndef SENAN_FEATURES_SPEAKER_H_
#define SENAN_FEATURES_SPEAKER_H_

#include <string>
#include <unordered_map>
#include <vector>

namespace senan {

// Frozen per-speaker conditioning vectors standing in for learned speaker
// embeddings: a unit-norm Gaussian draw determined by (seed, speaker id),
// fixed for the life of the table.
class SpeakerTable {
 public:
  SpeakerTable(int dim, uint64_t seed) : dim_(dim), seed_(seed) {}

  void Register(const std::string &speaker);
  bool Registered(const std::string &speaker) const {
    return table_.count(speaker) != 0;
  }
  // Throws UnknownSpeaker for unregistered ids.
  const std::vector<double> &Embedding(const std::string &speaker) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  uint64_t seed_;
  std::unordered_map<std::string, std::vector<double>> table_;
};

}  // namespace senan

#endif  // SENAN_FEATURES_SPEAKER_H_
