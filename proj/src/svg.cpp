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

#include "mqnc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mqnc {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char *color(size_t k) {
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
                                    "#8c6d31", "#843c39", "#7b4173", "#3182bd"};
    return palette[k % 16];
}

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out.push_back(c);
        }
    }
    return out;
}

double nice_step(double span) {
    double raw = span / 5;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            return m * mag;
        }
    }
    return 10 * mag;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

void header(std::ostringstream &out, const std::string &title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
}

}  // namespace

std::string svg_line_plot(const std::string &title, const std::string &x_label, const std::string &y_label,
                          const std::vector<LineSeries> &series) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto &s : series) {
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); i++) {
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!std::isfinite(x0)) {
        x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    }
    if (x1 == x0) {
        x0 -= 0.5, x1 += 0.5;
    }
    y0 = std::min(y0, 0.0);
    if (y1 <= y0) {
        y1 = y0 + 1;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return kTop + (1 - (y - y0) / (y1 - y0)) * ph; };

    std::ostringstream out;
    header(out, title);
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    double xs = nice_step(x1 - x0);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-12; t += xs) {
        out << "<line x1=\"" << px(t) << "\" y1=\"" << kTop + ph << "\" x2=\"" << px(t) << "\" y2=\"" << kTop + ph + 5
            << "\" stroke=\"black\"/><text x=\"" << px(t) << "\" y=\"" << kTop + ph + 18
            << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
    }
    double ys = nice_step(y1 - y0);
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-12; t += ys) {
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << py(t)
            << "\" stroke=\"#ddd\"/><text x=\"" << kLeft - 8 << "\" y=\"" << py(t) + 4
            << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
        << escape(x_label) << "</text>\n";
    out << "<text transform=\"translate(18," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(y_label) << "</text>\n";
    for (size_t k = 0; k < series.size(); k++) {
        const auto &s = series[k];
        out << "<polyline fill=\"none\" stroke=\"" << color(k) << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); i++) {
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        double ly = kTop + 10 + 18 * static_cast<double>(k);
        out << "<line x1=\"" << kLeft + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 40 << "\" y2=\""
            << ly << "\" stroke=\"" << color(k) << "\" stroke-width=\"2\"/><text x=\"" << kLeft + pw + 45
            << "\" y=\"" << ly + 4 << "\">" << escape(s.name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_stacked_bars(const std::string &title, const std::vector<std::string> &categories,
                             const std::vector<std::string> &segments,
                             const std::vector<std::vector<double>> &values) {
    double top = 0;
    for (const auto &bar : values) {
        double sum = 0;
        for (double v : bar) {
            sum += v;
        }
        top = std::max(top, sum);
    }
    if (top <= 0) {
        top = 1;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const double slot = categories.empty() ? pw : pw / static_cast<double>(categories.size());

    std::ostringstream out;
    header(out, title);
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    double ys = nice_step(top);
    for (double t = 0; t <= top + 1e-12; t += ys) {
        double y = kTop + (1 - t / top) * ph;
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
            << "\" stroke=\"black\"/><text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
            << fmt(t) << "</text>\n";
    }
    for (size_t i = 0; i < categories.size(); i++) {
        double x = kLeft + slot * (static_cast<double>(i) + 0.2);
        double w = slot * 0.6;
        double acc = 0;
        for (size_t k = 0; i < values.size() && k < values[i].size(); k++) {
            double h = values[i][k] / top * ph;
            double y = kTop + ph - acc - h;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h << "\" fill=\""
                << color(k) << "\"/>\n";
            acc += h;
        }
        out << "<text x=\"" << x + w / 2 << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
            << escape(categories[i]) << "</text>\n";
    }
    for (size_t k = 0; k < segments.size(); k++) {
        double ly = kTop + 10 + 16 * static_cast<double>(k);
        out << "<rect x=\"" << kLeft + pw + 15 << "\" y=\"" << ly - 8 << "\" width=\"12\" height=\"12\" fill=\""
            << color(k) << "\"/><text x=\"" << kLeft + pw + 32 << "\" y=\"" << ly + 2 << "\">" << escape(segments[k])
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace mqnc
