// cli/scoring.cc

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

#include "cli/scoring.h"

#include <cstdio>

namespace senan {

namespace {

struct Cell {
  int32_t total;
  int32_t sub;
  int32_t del;

  bool operator<(const Cell &o) const {
    if (total != o.total) return total < o.total;
    if (sub != o.sub) return sub < o.sub;
    return del < o.del;
  }
};

}  // namespace

EditCounts AlignLevenshtein(const std::vector<int> &ref,
                            const std::vector<int> &hyp) {
  int n = static_cast<int>(ref.size());
  int m = static_cast<int>(hyp.size());
  // rolling rows over hyp positions
  std::vector<Cell> prev(static_cast<size_t>(m) + 1), cur(prev);
  for (int j = 0; j <= m; ++j) prev[static_cast<size_t>(j)] = {j, 0, 0};
  for (int i = 1; i <= n; ++i) {
    cur[0] = {i, 0, i};  // all deletions
    for (int j = 1; j <= m; ++j) {
      int match = ref[static_cast<size_t>(i - 1)] == hyp[static_cast<size_t>(j - 1)] ? 0 : 1;
      Cell diag = prev[static_cast<size_t>(j - 1)];
      diag.total += match;
      diag.sub += match;
      Cell up = prev[static_cast<size_t>(j)];  // delete ref token
      up.total += 1;
      up.del += 1;
      Cell left = cur[static_cast<size_t>(j - 1)];  // insert hyp token
      left.total += 1;
      Cell best = diag;
      if (up < best) best = up;
      if (left < best) best = left;
      cur[static_cast<size_t>(j)] = best;
    }
    std::swap(prev, cur);
  }
  const Cell &c = prev[static_cast<size_t>(m)];
  EditCounts counts;
  counts.sub = c.sub;
  counts.del = c.del;
  counts.ins = c.total - c.sub - c.del;
  counts.ref_len = n;
  return counts;
}

ScoreReport ScoreHypotheses(
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>
        &ref_hyp_pairs) {
  ScoreReport report;
  for (const auto &[ref, hyp] : ref_hyp_pairs) {
    EditCounts c = AlignLevenshtein(ref, hyp);
    report.counts.sub += c.sub;
    report.counts.del += c.del;
    report.counts.ins += c.ins;
    report.counts.ref_len += c.ref_len;
    ++report.num_utterances;
  }
  if (report.counts.ref_len > 0)
    report.wer = 100.0 * static_cast<double>(report.counts.Total()) /
                 static_cast<double>(report.counts.ref_len);
  return report;
}

std::string ScoreReport::ToString() const {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%%WER %.2f [ %lld / %lld, %lld ins, %lld del, %lld sub ]\n",
                wer, static_cast<long long>(counts.Total()),
                static_cast<long long>(counts.ref_len),
                static_cast<long long>(counts.ins),
                static_cast<long long>(counts.del),
                static_cast<long long>(counts.sub));
  out += buf;
  if (frame_accuracy >= 0.0) {
    std::snprintf(buf, sizeof(buf), "%%FrameAcc %.2f over %lld frames\n",
                  frame_accuracy, static_cast<long long>(frames_scored));
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "utterances: %d\n", num_utterances);
  out += buf;
  return out;
}

}  // namespace senan
