// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "newscause/series.hpp"

namespace newscause {

struct ChartSeries {
  std::string label;
  AnnualSeries series;
  std::string color;  // empty picks from the default palette by position
};

struct EventMarker {
  int year = 0;
  std::string label;
};

/// Static line chart over a shared year axis; up to 4 series.
struct ChartSpec {
  std::string title;
  std::vector<ChartSeries> series;
  std::vector<EventMarker> markers;
};

/// Standalone SVG with linear scales, one polyline per contiguous run of
/// present values, a legend, and dashed vertical event markers. Identical
/// specs render byte-identical output.
std::string render_chart_svg(const ChartSpec& spec);
void render_chart(const ChartSpec& spec, const std::string& path);

}  // namespace newscause
