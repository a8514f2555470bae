// cli/scoring.h

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

#ifndef SENAN_CLI_SCORING_H_
#define SENAN_CLI_SCORING_H_

#include <string>
#include <vector>

namespace senan {

struct EditCounts {
  int64_t sub = 0;
  int64_t del = 0;
  int64_t ins = 0;
  int64_t ref_len = 0;

  int64_t Total() const { return sub + del + ins; }
};

// Levenshtein alignment with unit costs. Among minimum-cost alignments the
// counts are made unique by minimizing (total, substitutions, deletions)
// lexicographically, so two independent implementations of the same
// objective agree exactly.
EditCounts AlignLevenshtein(const std::vector<int> &ref,
                            const std::vector<int> &hyp);

struct ScoreReport {
  double wer = 0.0;  // percent
  EditCounts counts;
  double frame_accuracy = -1.0;  // percent; negative when unavailable
  int64_t frames_scored = 0;
  int num_utterances = 0;

  std::string ToString() const;
};

ScoreReport ScoreHypotheses(
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>
        &ref_hyp_pairs);

}  // namespace senan

#endif  // SENAN_CLI_SCORING_H_
