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


#pragma once

#include <string>
#include <vector>

namespace rbarrier {

struct ChartSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool markers = true;
    bool dashed = false;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 640;
    int height = 420;
    std::vector<ChartSeries> series;
};

/// Data-to-pixel map of one axis.
struct ChartAxis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;
    double pixel_lo = 0.0;   // pixel of `lo`
    double pixel_hi = 1.0;   // pixel of `hi`

    double to_pixel(double v) const;
    double from_pixel(double px) const;
};

struct ChartLayout {
    ChartAxis x;
    ChartAxis y;
};

/// Axis ranges from the finite (and, on log axes, positive) data.
ChartLayout layout_chart(const ChartSpec& spec);

/// Self-contained SVG document: axes with ticks, one polyline per series,
/// point markers carrying their exact data values in data-x / data-y, legend.
std::string render_svg(const ChartSpec& spec);

} // namespace rbarrier
