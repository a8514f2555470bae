// cli/svg.cc

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

#include "cli/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace senan {

namespace {

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char *kPalette[] = {"#4878a8", "#d0605e", "#5aa469", "#8860a8",
                          "#c8a042", "#50a0a8"};

}  // namespace

std::string SvgBarChart(const std::string &title,
                        const std::vector<std::string> &labels,
                        const std::vector<double> &values,
                        const std::string &value_suffix) {
  const int width = 720, height = 360;
  const int left = 70, right = 20, top = 50, bottom = 90;
  int plot_w = width - left - right, plot_h = height - top - bottom;
  double vmax = 1e-9;
  for (double v : values) vmax = std::max(vmax, v);
  vmax *= 1.15;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << title << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
     << left + plot_w << "\" y2=\"" << top + plot_h
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";

  size_t n = values.size();
  double slot = n > 0 ? static_cast<double>(plot_w) / n : plot_w;
  double bar_w = slot * 0.6;
  for (size_t i = 0; i < n; ++i) {
    double h = values[i] / vmax * plot_h;
    double x = left + slot * i + (slot - bar_w) / 2.0;
    double y = top + plot_h - h;
    os << "<rect x=\"" << Num(x) << "\" y=\"" << Num(y) << "\" width=\""
       << Num(bar_w) << "\" height=\"" << Num(h) << "\" fill=\""
       << kPalette[i % 6] << "\"/>\n";
    os << "<text x=\"" << Num(x + bar_w / 2) << "\" y=\"" << Num(y - 5)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"12\">"
       << Num(values[i]) << value_suffix << "</text>\n";
    os << "<text x=\"" << Num(x + bar_w / 2) << "\" y=\""
       << top + plot_h + 16 << "\" text-anchor=\"end\" "
          "font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-30 "
       << Num(x + bar_w / 2) << " " << top + plot_h + 16 << ")\">"
       << labels[i] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string SvgLineChart(const std::string &title,
                         const std::vector<std::string> &series_names,
                         const std::vector<std::vector<double>> &series) {
  const int width = 720, height = 360;
  const int left = 70, right = 150, top = 50, bottom = 50;
  int plot_w = width - left - right, plot_h = height - top - bottom;
  double vmax = -1e300, vmin = 1e300;
  size_t len = 0;
  for (const auto &s : series)
    for (double v : s) {
      vmax = std::max(vmax, v);
      vmin = std::min(vmin, v);
    }
  for (const auto &s : series) len = std::max(len, s.size());
  if (series.empty() || len == 0) {
    vmin = 0.0;
    vmax = 1.0;
    len = 1;
  }
  if (vmax <= vmin) vmax = vmin + 1.0;
  double span = vmax - vmin;
  vmax += span * 0.05;
  vmin -= span * 0.05;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << title << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
     << left + plot_w << "\" y2=\"" << top + plot_h
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  for (size_t s = 0; s < series.size(); ++s) {
    if (series[s].empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 6]
       << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < series[s].size(); ++i) {
      double x = left + (len > 1 ? static_cast<double>(plot_w) * i / (len - 1)
                                 : plot_w / 2.0);
      double y = top + plot_h - (series[s][i] - vmin) / (vmax - vmin) * plot_h;
      os << Num(x) << "," << Num(y) << " ";
    }
    os << "\"/>\n";
    os << "<text x=\"" << left + plot_w + 8 << "\" y=\"" << top + 14 * (s + 1)
       << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
       << kPalette[s % 6] << "\">" << series_names[s] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace senan
