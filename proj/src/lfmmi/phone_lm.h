// lfmmi/phone_lm.h

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

#ifndef SENAN_LFMMI_PHONE_LM_H_
#define SENAN_LFMMI_PHONE_LM_H_

#include <vector>

namespace senan {

// Add-one smoothed bigram over phone ids. Histories are the start symbol and
// every phone; predictions are every phone and the end symbol; outgoing
// probabilities per history sum to one exactly.
class PhoneLm {
 public:
  // Uniform model: every prediction gets probability 1 / (P + 1).
  explicit PhoneLm(int num_phones);

  static PhoneLm Train(const std::vector<std::vector<int>> &transcripts,
                       int num_phones);

  int num_phones() const { return num_phones_; }
  double LogProbInitial(int phone) const;           // P(phone | <s>)
  double LogProbNext(int next, int prev) const;     // P(next | prev)
  double LogProbFinal(int prev) const;              // P(</s> | prev)
  double SequenceLogProb(const std::vector<int> &transcript) const;

 private:
  int num_phones_;
  // rows: histories (phones then <s>); cols: predictions (phones then </s>)
  std::vector<std::vector<double>> log_prob_;
};

}  // namespace senan

#endif  // SENAN_LFMMI_PHONE_LM_H_
