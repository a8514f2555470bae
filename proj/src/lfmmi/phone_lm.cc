// lfmmi/phone_lm.cc

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

#include "lfmmi/phone_lm.h"

#include <cmath>

#include "util/error.h"

namespace senan {

PhoneLm::PhoneLm(int num_phones) : num_phones_(num_phones) {
  SENAN_CHECK(num_phones >= 1, ErrorCode::kInvalidConfig,
              "phone LM needs at least one phone");
  double lp = std::log(1.0 / (num_phones + 1));
  log_prob_.assign(static_cast<size_t>(num_phones) + 1,
                   std::vector<double>(static_cast<size_t>(num_phones) + 1,
                                       lp));
}

PhoneLm PhoneLm::Train(const std::vector<std::vector<int>> &transcripts,
                       int num_phones) {
  PhoneLm lm(num_phones);
  int p = num_phones;
  std::vector<std::vector<int64_t>> counts(
      static_cast<size_t>(p) + 1, std::vector<int64_t>(static_cast<size_t>(p) + 1, 0));
  for (const auto &tr : transcripts) {
    int prev = p;  // <s>
    for (int phone : tr) {
      SENAN_CHECK(phone >= 0 && phone < p, ErrorCode::kUnknownPhone,
                  "transcript phone out of range");
      ++counts[static_cast<size_t>(prev)][static_cast<size_t>(phone)];
      prev = phone;
    }
    ++counts[static_cast<size_t>(prev)][static_cast<size_t>(p)];  // </s>
  }
  for (int h = 0; h <= p; ++h) {
    int64_t total = 0;
    for (int n = 0; n <= p; ++n)
      total += counts[static_cast<size_t>(h)][static_cast<size_t>(n)];
    double denom = static_cast<double>(total + p + 1);
    for (int n = 0; n <= p; ++n)
      lm.log_prob_[static_cast<size_t>(h)][static_cast<size_t>(n)] = std::log(
          (counts[static_cast<size_t>(h)][static_cast<size_t>(n)] + 1.0) /
          denom);
  }
  return lm;
}

double PhoneLm::LogProbInitial(int phone) const {
  return log_prob_[static_cast<size_t>(num_phones_)][static_cast<size_t>(phone)];
}

double PhoneLm::LogProbNext(int next, int prev) const {
  return log_prob_[static_cast<size_t>(prev)][static_cast<size_t>(next)];
}

double PhoneLm::LogProbFinal(int prev) const {
  return log_prob_[static_cast<size_t>(prev)][static_cast<size_t>(num_phones_)];
}

double PhoneLm::SequenceLogProb(const std::vector<int> &transcript) const {
  SENAN_CHECK(!transcript.empty(), ErrorCode::kEmptyTranscript,
              "empty transcript");
  double lp = LogProbInitial(transcript[0]);
  for (size_t i = 1; i < transcript.size(); ++i)
    lp += LogProbNext(transcript[i], transcript[i - 1]);
  return lp + LogProbFinal(transcript.back());
}

}  // namespace senan
