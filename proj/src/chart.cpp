// SPDX-License-Identifier: Apache-2.0
#include "newscause/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "newscause/error.hpp"
#include "newscause/util.hpp"

namespace newscause {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 60.0;
constexpr double kRight = kWidth - 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = kHeight - 50.0;

const char* kPalette[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Smallest of 1/2/5 * 10^k at or above `raw`.
double nice_step(double raw) {
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double unit = raw / mag;
  if (unit <= 1.0) return mag;
  if (unit <= 2.0) return 2.0 * mag;
  if (unit <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

std::string render_chart_svg(const ChartSpec& spec) {
  if (spec.series.empty()) throw Error("chart needs at least one series");
  if (spec.series.size() > 4) throw Error("chart supports at most 4 series");

  int year_min = std::numeric_limits<int>::max();
  int year_max = std::numeric_limits<int>::min();
  double val_min = std::numeric_limits<double>::infinity();
  double val_max = -std::numeric_limits<double>::infinity();
  for (const auto& cs : spec.series) {
    std::size_t present = 0;
    for (const auto& p : cs.series.points) {
      if (!p.value) continue;
      ++present;
      year_min = std::min(year_min, p.year);
      year_max = std::max(year_max, p.year);
      val_min = std::min(val_min, *p.value);
      val_max = std::max(val_max, *p.value);
    }
    if (present < 2) {
      throw Error("chart series '" + cs.label + "' needs at least 2 points");
    }
  }
  // a span below rounding noise is flat for display purposes
  const double scale = std::max({1.0, std::abs(val_min), std::abs(val_max)});
  if (val_max - val_min <= 1e-12 * scale) {
    val_min -= 1.0;
    val_max += 1.0;
  } else {
    const double pad = 0.05 * (val_max - val_min);
    val_min -= pad;
    val_max += pad;
  }

  const double x_span = static_cast<double>(year_max - year_min);
  auto x_of = [&](double year) {
    return kLeft + (year - year_min) / x_span * (kRight - kLeft);
  };
  auto y_of = [&](double v) {
    return kBottom - (v - val_min) / (val_max - val_min) * (kBottom - kTop);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"420\" "
         "viewBox=\"0 0 800 420\" font-family=\"sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"420\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    svg += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           xml_escape(spec.title) + "</text>\n";
  }

  // horizontal grid and y tick labels; indexed so the step cannot stall
  const double y_step = nice_step((val_max - val_min) / 4.0);
  const double first_tick = std::ceil(val_min / y_step);
  const double last_tick = std::floor((val_max + 1e-9 * y_step) / y_step);
  for (double i = first_tick; i <= last_tick; i += 1.0) {
    const double tick = i * y_step;
    const double y = y_of(tick);
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kRight) +
           "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6.0) + "\" y=\"" + num(y + 4.0) +
           "\" text-anchor=\"end\" font-size=\"11\">" + format_real(tick, 6) + "</text>\n";
  }

  // x tick labels at nice year intervals
  int year_step = 1;
  while ((year_max - year_min) / year_step > 10) {
    year_step = year_step == 1 ? 2 : year_step == 2 ? 5 : year_step * 2;
  }
  for (int year = year_min; year <= year_max; ++year) {
    if ((year - year_min) % year_step != 0) continue;
    const double x = x_of(year);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kBottom + 4.0) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(kBottom + 18.0) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + std::to_string(year) + "</text>\n";
  }

  // axes
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(kRight) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // event markers behind the data lines
  for (const auto& marker : spec.markers) {
    if (marker.year < year_min || marker.year > year_max) continue;
    const double x = x_of(marker.year);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kBottom) + "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    if (!marker.label.empty()) {
      svg += "<text x=\"" + num(x + 4.0) + "\" y=\"" + num(kTop + 12.0) +
             "\" font-size=\"11\" fill=\"#555555\">" + xml_escape(marker.label) + "</text>\n";
    }
  }

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const auto& cs = spec.series[s];
    const std::string color = cs.color.empty() ? kPalette[s] : cs.color;
    std::string run;
    std::size_t run_len = 0;
    auto flush = [&] {
      if (run_len >= 2) {
        svg += "<polyline fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\" points=\"" + run + "\"/>\n";
      }
      run.clear();
      run_len = 0;
    };
    for (const auto& p : cs.series.points) {
      if (!p.value) {
        flush();
        continue;
      }
      if (!run.empty()) run += ' ';
      run += num(x_of(p.year)) + "," + num(y_of(*p.value));
      ++run_len;
    }
    flush();
  }

  // legend, stacked inside the top-left of the plot area
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const auto& cs = spec.series[s];
    const std::string color = cs.color.empty() ? kPalette[s] : cs.color;
    const double y = kTop + 14.0 + 16.0 * static_cast<double>(s);
    svg += "<line x1=\"" + num(kLeft + 8.0) + "\" y1=\"" + num(y - 4.0) + "\" x2=\"" +
           num(kLeft + 28.0) + "\" y2=\"" + num(y - 4.0) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kLeft + 34.0) + "\" y=\"" + num(y) + "\" font-size=\"12\">" +
           xml_escape(cs.label) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

void render_chart(const ChartSpec& spec, const std::string& path) {
  write_file(path, render_chart_svg(spec));
}

}  // namespace newscause
