/*
   Copyright 2026 The rbarrier Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include "rbarrier/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rbarrier/report_io.hpp"

namespace rbarrier {

namespace {

constexpr double kMarginLeft = 78.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 56.0;

bool plottable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string px(double v)
{
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(2);
    o << v;
    return o.str();
}

std::string tick_label(double v)
{
    std::ostringstream o;
    o.precision(4);
    o << v;
    return o.str();
}

std::vector<double> ticks_for(const ChartAxis& a)
{
    std::vector<double> t;
    if (a.log) {
        const int lo = static_cast<int>(std::floor(std::log10(a.lo) + 1e-9));
        const int hi = static_cast<int>(std::ceil(std::log10(a.hi) - 1e-9));
        for (int e = lo; e <= hi; ++e) {
            const double v = std::pow(10.0, e);
            if (v >= a.lo * (1 - 1e-9) && v <= a.hi * (1 + 1e-9))
                t.push_back(v);
        }
        if (t.size() < 2) {
            t = {a.lo, std::sqrt(a.lo * a.hi), a.hi};
        }
        return t;
    }
    const double span = a.hi - a.lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw)
            break;
    }
    for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-9 * span; v += step)
        t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return t;
}

void range_of(const ChartSpec& spec, bool use_x, bool log, double& lo, double& hi)
{
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (const auto& s : spec.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!plottable(s.x[i], spec.log_x) || !plottable(s.y[i], spec.log_y))
                continue;
            const double v = use_x ? s.x[i] : s.y[i];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!std::isfinite(lo)) {
        lo = log ? 0.1 : 0.0;
        hi = 1.0;
    }
    if (log) {
        if (hi <= lo) {
            lo /= 2.0;
            hi *= 2.0;
        }
        const double pad = std::pow(hi / lo, 0.05);
        lo /= pad;
        hi *= pad;
    } else {
        if (hi <= lo) {
            const double w = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
            lo -= w;
            hi += w;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
}

} // namespace

double ChartAxis::to_pixel(double v) const
{
    const double f = log ? (std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo)) : (v - lo) / (hi - lo);
    return pixel_lo + f * (pixel_hi - pixel_lo);
}

double ChartAxis::from_pixel(double p) const
{
    const double f = (p - pixel_lo) / (pixel_hi - pixel_lo);
    return log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
}

ChartLayout layout_chart(const ChartSpec& spec)
{
    ChartLayout l;
    range_of(spec, true, spec.log_x, l.x.lo, l.x.hi);
    range_of(spec, false, spec.log_y, l.y.lo, l.y.hi);
    l.x.log = spec.log_x;
    l.y.log = spec.log_y;
    l.x.pixel_lo = kMarginLeft;
    l.x.pixel_hi = spec.width - kMarginRight;
    l.y.pixel_lo = spec.height - kMarginBottom;
    l.y.pixel_hi = kMarginTop;
    return l;
}

std::string render_svg(const ChartSpec& spec)
{
    const ChartLayout l = layout_chart(spec);
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(spec.title)
      << "</text>\n";

    const double x0 = l.x.pixel_lo, x1 = l.x.pixel_hi, y0 = l.y.pixel_lo, y1 = l.y.pixel_hi;
    o << "<g stroke=\"black\" fill=\"none\"><rect x=\"" << px(x0) << "\" y=\"" << px(y1) << "\" width=\""
      << px(x1 - x0) << "\" height=\"" << px(y0 - y1) << "\"/></g>\n";

    o << "<g class=\"ticks\" stroke=\"#ccc\">\n";
    for (double t : ticks_for(l.x)) {
        const double p = l.x.to_pixel(t);
        o << "<line x1=\"" << px(p) << "\" y1=\"" << px(y0) << "\" x2=\"" << px(p) << "\" y2=\"" << px(y1) << "\"/>"
          << "<text stroke=\"none\" fill=\"black\" x=\"" << px(p) << "\" y=\"" << px(y0 + 16)
          << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    for (double t : ticks_for(l.y)) {
        const double p = l.y.to_pixel(t);
        o << "<line x1=\"" << px(x0) << "\" y1=\"" << px(p) << "\" x2=\"" << px(x1) << "\" y2=\"" << px(p) << "\"/>"
          << "<text stroke=\"none\" fill=\"black\" x=\"" << px(x0 - 6) << "\" y=\"" << px(p + 4)
          << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    o << "</g>\n";
    o << "<text x=\"" << px((x0 + x1) / 2) << "\" y=\"" << spec.height - 14 << "\" text-anchor=\"middle\">"
      << escape(spec.x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << px((y0 + y1) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(spec.y_label) << "</text>\n";

    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        std::ostringstream pts;
        std::ostringstream markers;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!plottable(s.x[i], spec.log_x) || !plottable(s.y[i], spec.log_y))
                continue;
            const double cx = l.x.to_pixel(s.x[i]);
            const double cy = l.y.to_pixel(s.y[i]);
            pts << px(cx) << ',' << px(cy) << ' ';
            if (s.markers)
                markers << "<circle class=\"pt\" data-series=\"" << si << "\" data-x=\"" << format_double(s.x[i])
                        << "\" data-y=\"" << format_double(s.y[i]) << "\" cx=\"" << px(cx) << "\" cy=\"" << px(cy)
                        << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        }
        o << "<polyline class=\"series\" data-label=\"" << escape(s.label) << "\" fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << pts.str()
          << "\"/>\n";
        o << markers.str();
        const double ly = y1 + 16 + 18 * static_cast<double>(si);
        o << "<line x1=\"" << px(x1 - 150) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(x1 - 126) << "\" y2=\""
          << px(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
          << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/><text x=\"" << px(x1 - 120) << "\" y=\""
          << px(ly + 4) << "\">" << escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

} // namespace rbarrier
