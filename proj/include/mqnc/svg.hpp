// Copyright 2026 The mqnc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace mqnc {

struct LineSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Standalone SVG with axes, ticks, one polyline per series and a legend.
std::string svg_line_plot(const std::string &title, const std::string &x_label, const std::string &y_label,
                          const std::vector<LineSeries> &series);

/// One stacked bar per category; values[i][k] is the height of segment k in bar i.
std::string svg_stacked_bars(const std::string &title, const std::vector<std::string> &categories,
                             const std::vector<std::string> &segments,
                             const std::vector<std::vector<double>> &values);

}  // namespace mqnc
