// lfmmi/forward_backward.cc

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

#include "lfmmi/forward_backward.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace senan {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

double ForwardLogZ(const Graph &g, const Tensor &logp, double *alive_mass) {
  int t_frames = logp.Rows();
  int s = g.num_states;
  std::vector<double> alpha(static_cast<size_t>(s), kNegInf);
  std::vector<double> next(static_cast<size_t>(s), kNegInf);
  alpha[static_cast<size_t>(g.start)] = 0.0;
  for (int t = 0; t < t_frames; ++t) {
    std::fill(next.begin(), next.end(), kNegInf);
    for (const Arc &a : g.arcs) {
      double src = alpha[static_cast<size_t>(a.src)];
      if (src == kNegInf) continue;
      double w = src + a.log_weight + logp.At(t, a.label);
      next[static_cast<size_t>(a.dst)] =
          LogAdd(next[static_cast<size_t>(a.dst)], w);
    }
    std::swap(alpha, next);
  }
  double logz = kNegInf;
  double alive = 0.0;
  for (int i = 0; i < s; ++i) {
    if (alpha[static_cast<size_t>(i)] == kNegInf) continue;
    logz = LogAdd(logz, alpha[static_cast<size_t>(i)] +
                            g.final_logw[static_cast<size_t>(i)]);
    alive += std::exp(alpha[static_cast<size_t>(i)]);
  }
  if (alive_mass != nullptr) *alive_mass = alive;
  return logz;
}

FbResult ForwardBackward(const Graph &g, const Tensor &logp) {
  int t_frames = logp.Rows();
  int k = logp.Cols();
  int s = g.num_states;
  SENAN_CHECK(t_frames >= 1, ErrorCode::kNoPath, "no frames");
  g.Validate(k);

  // alpha[t][i]: log mass of t-arc prefixes ending in state i
  std::vector<std::vector<double>> alpha(
      static_cast<size_t>(t_frames) + 1,
      std::vector<double>(static_cast<size_t>(s), kNegInf));
  alpha[0][static_cast<size_t>(g.start)] = 0.0;
  for (int t = 0; t < t_frames; ++t)
    for (const Arc &a : g.arcs) {
      double src = alpha[static_cast<size_t>(t)][static_cast<size_t>(a.src)];
      if (src == kNegInf) continue;
      double w = src + a.log_weight + logp.At(t, a.label);
      auto &cell = alpha[static_cast<size_t>(t) + 1][static_cast<size_t>(a.dst)];
      cell = LogAdd(cell, w);
    }

  double logz = kNegInf;
  for (int i = 0; i < s; ++i)
    logz = LogAdd(logz, alpha[static_cast<size_t>(t_frames)][static_cast<size_t>(i)] +
                            g.final_logw[static_cast<size_t>(i)]);
  SENAN_CHECK(logz != kNegInf, ErrorCode::kNoPath,
              "graph admits no complete path");

  // beta[t][i]: log mass of completions from state i after t arcs
  std::vector<std::vector<double>> beta(
      static_cast<size_t>(t_frames) + 1,
      std::vector<double>(static_cast<size_t>(s), kNegInf));
  beta[static_cast<size_t>(t_frames)] =
      std::vector<double>(g.final_logw.begin(), g.final_logw.end());
  for (int t = t_frames - 1; t >= 0; --t)
    for (const Arc &a : g.arcs) {
      double dst = beta[static_cast<size_t>(t) + 1][static_cast<size_t>(a.dst)];
      if (dst == kNegInf) continue;
      double w = a.log_weight + logp.At(t, a.label) + dst;
      auto &cell = beta[static_cast<size_t>(t)][static_cast<size_t>(a.src)];
      cell = LogAdd(cell, w);
    }

  FbResult res;
  res.logz = logz;
  res.gamma = Tensor({t_frames, k});
  for (int t = 0; t < t_frames; ++t) {
    std::vector<double> acc(static_cast<size_t>(k), kNegInf);
    for (const Arc &a : g.arcs) {
      double src = alpha[static_cast<size_t>(t)][static_cast<size_t>(a.src)];
      double dst = beta[static_cast<size_t>(t) + 1][static_cast<size_t>(a.dst)];
      if (src == kNegInf || dst == kNegInf) continue;
      double w = src + a.log_weight + logp.At(t, a.label) + dst;
      acc[static_cast<size_t>(a.label)] =
          LogAdd(acc[static_cast<size_t>(a.label)], w);
    }
    for (int j = 0; j < k; ++j)
      res.gamma.At(t, j) = acc[static_cast<size_t>(j)] == kNegInf
                               ? 0.0
                               : std::exp(acc[static_cast<size_t>(j)] - logz);
  }
  return res;
}

DecodeResult ViterbiDecode(const Graph &g, const Tensor &logp) {
  int t_frames = logp.Rows();
  int k = logp.Cols();
  int s = g.num_states;
  SENAN_CHECK(t_frames >= 1, ErrorCode::kNoPath, "no frames to decode");
  g.Validate(k);

  std::vector<std::vector<double>> delta(
      static_cast<size_t>(t_frames) + 1,
      std::vector<double>(static_cast<size_t>(s), kNegInf));
  std::vector<std::vector<int>> backptr(
      static_cast<size_t>(t_frames) + 1,
      std::vector<int>(static_cast<size_t>(s), -1));
  delta[0][static_cast<size_t>(g.start)] = 0.0;
  for (int t = 0; t < t_frames; ++t)
    for (size_t ai = 0; ai < g.arcs.size(); ++ai) {
      const Arc &a = g.arcs[ai];
      double src = delta[static_cast<size_t>(t)][static_cast<size_t>(a.src)];
      if (src == kNegInf) continue;
      double w = src + a.log_weight + logp.At(t, a.label);
      auto &cell = delta[static_cast<size_t>(t) + 1][static_cast<size_t>(a.dst)];
      if (w > cell) {
        cell = w;
        backptr[static_cast<size_t>(t) + 1][static_cast<size_t>(a.dst)] =
            static_cast<int>(ai);
      }
    }

  double best = kNegInf;
  int best_state = -1;
  for (int i = 0; i < s; ++i) {
    double v = delta[static_cast<size_t>(t_frames)][static_cast<size_t>(i)] +
               g.final_logw[static_cast<size_t>(i)];
    if (v > best) {
      best = v;
      best_state = i;
    }
  }
  SENAN_CHECK(best != kNegInf && best_state >= 0, ErrorCode::kNoPath,
              "graph admits no complete path");

  DecodeResult res;
  res.best_logp = best;
  res.labels.resize(static_cast<size_t>(t_frames));
  std::vector<int> arc_path(static_cast<size_t>(t_frames));
  int state = best_state;
  for (int t = t_frames; t >= 1; --t) {
    int ai = backptr[static_cast<size_t>(t)][static_cast<size_t>(state)];
    const Arc &a = g.arcs[static_cast<size_t>(ai)];
    arc_path[static_cast<size_t>(t - 1)] = ai;
    res.labels[static_cast<size_t>(t - 1)] = a.label;
    state = a.src;
  }
  // Phone sequence from arcs that begin a token; falls back to collapsing
  // consecutive identical labels for graphs without builder metadata.
  bool has_meta = false;
  for (const Arc &a : g.arcs)
    if (a.begins_token) {
      has_meta = true;
      break;
    }
  if (has_meta) {
    for (int ai : arc_path) {
      const Arc &a = g.arcs[static_cast<size_t>(ai)];
      if (a.begins_token) res.phones.push_back(a.phone);
    }
  } else {
    int prev = -1;
    for (int label : res.labels) {
      if (label != prev) res.phones.push_back(label);
      prev = label;
    }
  }
  return res;
}

}  // namespace senan
