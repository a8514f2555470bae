// lfmmi/graph.h

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

#ifndef SENAN_LFMMI_GRAPH_H_
#define SENAN_LFMMI_GRAPH_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "corpus/corpus.h"
#include "lfmmi/phone_lm.h"

namespace senan {

// Weighted label automaton. Every arc is emitting: a path of T arcs from the
// start state to a final state accepts a length-T label sequence, each arc
// contributing its label and log weight, plus the final weight of the state
// it ends in. Labels sit on the arc's destination side: the entry arc into a
// phone's first state emits that state.
struct Arc {
  int src;
  int dst;
  int label;          // emitting state id in [0, K)
  double log_weight;
  // Builder metadata, not serialized: set on arcs that begin a new phone
  // token (entry and cross-phone arcs); used to read phone sequences off
  // decoded paths.
  bool begins_token = false;
  int phone = -1;
};

struct Graph {
  int num_states = 0;
  int start = 0;
  std::vector<Arc> arcs;
  std::vector<double> final_logw;  // -inf where non-final

  void Validate(int num_labels) const;
};

// Chain-style HMM for one phone: one emitting state per phone state with a
// self-loop and a forward arc, log-weights ln(0.5) each, entered through a
// non-emitting start state.
Graph BuildHmm(int phone, const PhoneInventory &inventory);

// Concatenation of the transcript's phone HMMs; the phone LM contributes
// log P(M_w): initial probability on the entry arc, bigram scores on the
// cross-phone arcs and the end probability on the final weight.
Graph BuildNumeratorGraph(const std::vector<int> &transcript,
                          const PhoneInventory &inventory, const PhoneLm &lm);

// One HMM instance per phone, fully connected through bigram-weighted cross
// arcs; every phone is enterable from the start state.
Graph BuildDenominatorGraph(const PhoneLm &lm, const PhoneInventory &inventory);

// Text format. Line 1: `start <id>`; arcs as `src dst label log_weight`;
// final states as `src final_logw`. Round-trips bit-exactly.
void SerializeGraph(std::ostream &os, const Graph &g);
Graph ParseGraph(std::istream &is);

}  // namespace senan

#endif  // SENAN_LFMMI_GRAPH_H_
