// cli/svg.h

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

#ifndef SENAN_CLI_SVG_H_
#define SENAN_CLI_SVG_H_

#include <string>
#include <vector>

namespace senan {

// Minimal deterministic SVG writers; no timestamps, no external assets.
std::string SvgBarChart(const std::string &title,
                        const std::vector<std::string> &labels,
                        const std::vector<double> &values,
                        const std::string &value_suffix = "");

std::string SvgLineChart(const std::string &title,
                         const std::vector<std::string> &series_names,
                         const std::vector<std::vector<double>> &series);

}  // namespace senan

#endif  // SENAN_CLI_SVG_H_
