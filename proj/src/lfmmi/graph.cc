// lfmmi/graph.cc

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

#include "lfmmi/graph.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "util/error.h"

namespace senan {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogHalf = std::log(0.5);

}  // namespace

void Graph::Validate(int num_labels) const {
  SENAN_CHECK(num_states >= 1 && start >= 0 && start < num_states,
              ErrorCode::kInvalidConfig, "bad graph start state");
  SENAN_CHECK(static_cast<int>(final_logw.size()) == num_states,
              ErrorCode::kInvalidConfig, "final weight vector size mismatch");
  for (const Arc &a : arcs) {
    SENAN_CHECK(a.src >= 0 && a.src < num_states && a.dst >= 0 &&
                    a.dst < num_states,
                ErrorCode::kInvalidConfig, "arc endpoint out of range");
    SENAN_CHECK(a.label >= 0 && a.label < num_labels,
                ErrorCode::kLabelOutOfRange, "arc label out of range");
  }
}

Graph BuildHmm(int phone, const PhoneInventory &inventory) {
  SENAN_CHECK(phone >= 0 && phone < inventory.NumPhones(),
              ErrorCode::kUnknownPhone, "phone id out of range");
  int s = inventory.states_per_phone;
  Graph g;
  g.num_states = s + 1;  // start + emitting chain
  g.start = 0;
  g.final_logw.assign(static_cast<size_t>(g.num_states), kNegInf);
  // entry
  g.arcs.push_back({0, 1, inventory.StateOf(phone, 0), 0.0, true, phone});
  for (int j = 0; j < s; ++j) {
    int state = 1 + j;
    g.arcs.push_back({state, state, inventory.StateOf(phone, j), kLogHalf,
                      false, phone});
    if (j + 1 < s)
      g.arcs.push_back({state, state + 1, inventory.StateOf(phone, j + 1),
                        kLogHalf, false, phone});
  }
  g.final_logw[static_cast<size_t>(s)] = kLogHalf;
  return g;
}

namespace {

// Appends the emitting chain of one phone instance; returns the id of its
// first emitting state. Exit probability mass (ln 0.5) is paid on the cross
// arc or final weight by the caller.
int AppendPhoneChain(Graph *g, int phone, const PhoneInventory &inv) {
  int first = g->num_states;
  int s = inv.states_per_phone;
  g->num_states += s;
  g->final_logw.resize(static_cast<size_t>(g->num_states), kNegInf);
  for (int j = 0; j < s; ++j) {
    int state = first + j;
    g->arcs.push_back({state, state, inv.StateOf(phone, j), kLogHalf, false,
                       phone});
    if (j + 1 < s)
      g->arcs.push_back({state, state + 1, inv.StateOf(phone, j + 1),
                         kLogHalf, false, phone});
  }
  return first;
}

}  // namespace

Graph BuildNumeratorGraph(const std::vector<int> &transcript,
                          const PhoneInventory &inventory, const PhoneLm &lm) {
  SENAN_CHECK(!transcript.empty(), ErrorCode::kEmptyTranscript,
              "numerator graph needs a non-empty transcript");
  for (int phone : transcript)
    SENAN_CHECK(phone >= 0 && phone < inventory.NumPhones(),
                ErrorCode::kUnknownPhone, "transcript phone out of range");
  Graph g;
  g.num_states = 1;  // start
  g.start = 0;
  g.final_logw.assign(1, kNegInf);
  int s = inventory.states_per_phone;
  int prev_last = -1;
  for (size_t i = 0; i < transcript.size(); ++i) {
    int phone = transcript[i];
    int first = AppendPhoneChain(&g, phone, inventory);
    int label = inventory.StateOf(phone, 0);
    if (i == 0) {
      g.arcs.push_back({0, first, label, lm.LogProbInitial(phone), true,
                        phone});
    } else {
      g.arcs.push_back({prev_last, first, label,
                        kLogHalf + lm.LogProbNext(phone, transcript[i - 1]),
                        true, phone});
    }
    prev_last = first + s - 1;
  }
  g.final_logw[static_cast<size_t>(prev_last)] =
      kLogHalf + lm.LogProbFinal(transcript.back());
  return g;
}

Graph BuildDenominatorGraph(const PhoneLm &lm,
                            const PhoneInventory &inventory) {
  Graph g;
  g.num_states = 1;  // start
  g.start = 0;
  g.final_logw.assign(1, kNegInf);
  int p = inventory.NumPhones();
  int s = inventory.states_per_phone;
  std::vector<int> first(static_cast<size_t>(p));
  for (int phone = 0; phone < p; ++phone)
    first[static_cast<size_t>(phone)] = AppendPhoneChain(&g, phone, inventory);
  for (int phone = 0; phone < p; ++phone) {
    int label = inventory.StateOf(phone, 0);
    g.arcs.push_back({0, first[static_cast<size_t>(phone)], label,
                      lm.LogProbInitial(phone), true, phone});
  }
  for (int prev = 0; prev < p; ++prev) {
    int prev_last = first[static_cast<size_t>(prev)] + s - 1;
    for (int next = 0; next < p; ++next)
      g.arcs.push_back({prev_last, first[static_cast<size_t>(next)],
                        inventory.StateOf(next, 0),
                        kLogHalf + lm.LogProbNext(next, prev), true, next});
    g.final_logw[static_cast<size_t>(prev_last)] =
        kLogHalf + lm.LogProbFinal(prev);
  }
  return g;
}

void SerializeGraph(std::ostream &os, const Graph &g) {
  char buf[40];
  os << "start " << g.start << "\n";
  for (const Arc &a : g.arcs) {
    std::snprintf(buf, sizeof(buf), "%.17g", a.log_weight);
    os << a.src << " " << a.dst << " " << a.label << " " << buf << "\n";
  }
  for (int s = 0; s < g.num_states; ++s) {
    if (g.final_logw[static_cast<size_t>(s)] == kNegInf) continue;
    std::snprintf(buf, sizeof(buf), "%.17g",
                  g.final_logw[static_cast<size_t>(s)]);
    os << s << " " << buf << "\n";
  }
}

Graph ParseGraph(std::istream &is) {
  Graph g;
  std::string line;
  bool have_start = false;
  int max_state = 0;
  std::vector<std::pair<int, double>> finals;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string first;
    ss >> first;
    if (first == "start") {
      SENAN_CHECK(static_cast<bool>(ss >> g.start), ErrorCode::kIoError,
                  "malformed start line");
      have_start = true;
      max_state = std::max(max_state, g.start);
      continue;
    }
    int src = std::stoi(first);
    std::vector<std::string> rest;
    std::string tok;
    while (ss >> tok) rest.push_back(tok);
    if (rest.size() == 3) {
      Arc a;
      a.src = src;
      a.dst = std::stoi(rest[0]);
      a.label = std::stoi(rest[1]);
      a.log_weight = std::stod(rest[2]);
      max_state = std::max({max_state, a.src, a.dst});
      g.arcs.push_back(a);
    } else if (rest.size() == 1) {
      finals.emplace_back(src, std::stod(rest[0]));
      max_state = std::max(max_state, src);
    } else {
      ThrowError(ErrorCode::kIoError, "malformed graph line: " + line);
    }
  }
  SENAN_CHECK(have_start, ErrorCode::kIoError, "graph missing start line");
  g.num_states = max_state + 1;
  g.final_logw.assign(static_cast<size_t>(g.num_states), kNegInf);
  for (auto &[s, w] : finals) g.final_logw[static_cast<size_t>(s)] = w;
  return g;
}

}  // namespace senan
