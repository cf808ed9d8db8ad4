// Copyright 2026 The spinmur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Report artifacts: the incompatibility curve, its CSV serialization, and a
// minimal self-contained SVG plot. All numbers are printed with 12
// significant digits, '.' decimal separator, and '\n' line endings so that
// reruns with identical inputs are byte-identical and diff-able.

#include <cstdio>
#include <string>
#include <vector>

#include "spinmur/geometry.hpp"
#include "spinmur/minimax.hpp"

namespace spinmur {

/// One point of the incompatibility curve.
struct CurvePoint {
    double alpha = 0.0;    // radians, in [0, pi]
    double i_alpha = 0.0;  // bits
    double gamma_opt = 0.0;
    Vec3 worst_state;
};

/// Fixed 12-significant-digit, locale-independent number formatting.
inline std::string format_sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Incompatibility degree on a uniform steps-point grid over [0, pi].
inline std::vector<CurvePoint> compute_curve(int steps, double tol) {
    if (steps < 2) {
        throw std::invalid_argument("compute_curve: need at least 2 steps");
    }
    std::vector<CurvePoint> out;
    out.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        double alpha = M_PI * i / (steps - 1);
        OptResult r = incompatibility_degree(alpha, tol);
        out.push_back(CurvePoint{alpha, r.value.bits, r.witness_param, r.witness_state.r});
    }
    return out;
}

inline std::string curve_csv(const std::vector<CurvePoint> &points) {
    std::string out = "alpha,i_alpha,gamma_opt,wx,wy,wz\n";
    for (const CurvePoint &p : points) {
        out += format_sig12(p.alpha) + "," + format_sig12(p.i_alpha) + "," +
               format_sig12(p.gamma_opt) + "," + format_sig12(p.worst_state.x) + "," +
               format_sig12(p.worst_state.y) + "," + format_sig12(p.worst_state.z) + "\n";
    }
    return out;
}

/// Self-contained SVG line plot of the curve (no external assets).
inline std::string curve_svg(const std::vector<CurvePoint> &points) {
    const double width = 640, height = 400;
    const double ml = 70, mr = 20, mt = 20, mb = 50;  // margins
    double y_max = 1e-12;
    for (const CurvePoint &p : points) {
        y_max = std::max(y_max, p.i_alpha);
    }
    y_max *= 1.08;
    auto px = [&](double alpha) { return ml + (width - ml - mr) * alpha / M_PI; };
    auto py = [&](double v) { return height - mb - (height - mt - mb) * v / y_max; };
    auto num = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.2f", v);
        return std::string(b);
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\">\n";
    s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(height - mb) + "\" x2=\"" +
         num(width - mr) + "\" y2=\"" + num(height - mb) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
         num(height - mb) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    struct {
        double alpha;
        const char *label;
    } ticks[3] = {{0.0, "0"}, {M_PI / 2, "pi/2"}, {M_PI, "pi"}};
    for (const auto &t : ticks) {
        s += "<line x1=\"" + num(px(t.alpha)) + "\" y1=\"" + num(height - mb) + "\" x2=\"" +
             num(px(t.alpha)) + "\" y2=\"" + num(height - mb + 6) +
             "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + num(px(t.alpha)) + "\" y=\"" + num(height - mb + 22) +
             "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" +
             t.label + "</text>\n";
    }
    s += "<text x=\"" + num(ml - 10) + "\" y=\"" + num(py(0.0) + 5) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">0</text>\n";
    s += "<text x=\"" + num(ml - 10) + "\" y=\"" + num(py(y_max / 1.08) + 5) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" +
         format_sig12(y_max / 1.08).substr(0, 8) + "</text>\n";
    s += "<text x=\"" + num((ml + width - mr) / 2) + "\" y=\"" + num(height - 10) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">alpha "
         "(radians)</text>\n";
    s += "<text x=\"18\" y=\"" + num((mt + height - mb) / 2) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 18 " +
         num((mt + height - mb) / 2) + ")\">incompatibility (bits)</text>\n";
    s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) {
            s += " ";
        }
        s += num(px(points[i].alpha)) + "," + num(py(points[i].i_alpha));
    }
    s += "\"/>\n</svg>\n";
    return s;
}

}  // namespace spinmur
