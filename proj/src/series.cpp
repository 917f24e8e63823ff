// SPDX-License-Identifier: Apache-2.0
#include "newscause/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "newscause/error.hpp"
#include "newscause/util.hpp"

namespace newscause {

std::optional<double> AnnualSeries::value_at(int year) const {
  for (const AnnualPoint& p : points)
    if (p.year == year) return p.value;
  return std::nullopt;
}

AnnualSeries make_annual_series(std::string name, std::string unit,
                                std::vector<AnnualPoint> points, Provenance provenance) {
  for (size_t i = 1; i < points.size(); ++i)
    if (points[i].year <= points[i - 1].year)
      throw Error("series '" + name + "': years must be strictly increasing (" +
                  std::to_string(points[i - 1].year) + " then " +
                  std::to_string(points[i].year) + ")");
  return AnnualSeries{std::move(name), std::move(unit), std::move(points), provenance};
}

AnnualSeries volume_series(const Corpus& corpus, const std::string& name) {
  if (corpus.empty()) throw Error("volume_series: empty corpus");
  std::map<int, double> counts;
  for (const Article& a : corpus) counts[a.date.year] += 1.0;
  std::vector<AnnualPoint> points;
  int first = counts.begin()->first, last = counts.rbegin()->first;
  for (int y = first; y <= last; ++y) {
    auto it = counts.find(y);
    points.push_back({y, it == counts.end() ? 0.0 : it->second});
  }
  return make_annual_series(name, "articles", std::move(points), Provenance::corpus_derived);
}

double pct_change(const AnnualSeries& series, int from_year, int to_year) {
  auto find = [&](int year) -> std::optional<double> {
    for (const AnnualPoint& p : series.points)
      if (p.year == year) return p.value;
    throw Error("pct_change: year " + std::to_string(year) + " not in series '" +
                series.name + "'");
  };
  std::optional<double> from = find(from_year), to = find(to_year);
  if (!from || !to) throw Error("pct_change: absent value in series '" + series.name + "'");
  if (*from == 0.0) throw Error("pct_change: zero base value in " + std::to_string(from_year));
  return (*to - *from) / *from * 100.0;
}

double share_of_year(const Corpus& corpus, int year,
                     const std::function<bool(const Article&)>& predicate) {
  int total = 0, matched = 0;
  for (const Article& a : corpus) {
    if (a.date.year != year) continue;
    ++total;
    if (predicate(a)) ++matched;
  }
  if (total == 0) throw Error("share_of_year: empty year " + std::to_string(year));
  return static_cast<double>(matched) / total;
}

AnnualSeries zscore(const AnnualSeries& series) {
  std::vector<double> values;
  for (const AnnualPoint& p : series.points)
    if (p.value) values.push_back(*p.value);
  if (values.size() < 3)
    throw Error("zscore: series '" + series.name + "' needs at least 3 nonabsent points");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());  // population variance
  double sd = std::sqrt(var);
  if (sd == 0.0) throw Error("constant series: '" + series.name + "'");
  std::vector<AnnualPoint> points;
  for (const AnnualPoint& p : series.points) {
    if (p.value) points.push_back({p.year, (*p.value - mean) / sd});
    else points.push_back({p.year, std::nullopt});
  }
  return make_annual_series(series.name + ".z", "sd", std::move(points), series.provenance);
}

AnnualSeries difference(const AnnualSeries& series) {
  std::vector<AnnualPoint> points;
  for (size_t i = 1; i < series.points.size(); ++i) {
    const AnnualPoint& prev = series.points[i - 1];
    const AnnualPoint& cur = series.points[i];
    if (cur.year == prev.year + 1 && prev.value && cur.value)
      points.push_back({cur.year, *cur.value - *prev.value});
  }
  if (points.empty())
    throw Error("difference: series '" + series.name +
                "' has no consecutive nonabsent point pair");
  return make_annual_series(series.name + ".d1", series.unit, std::move(points),
                            series.provenance);
}

std::vector<AlignedPoint> align(const AnnualSeries& a, const AnnualSeries& b) {
  std::vector<AlignedPoint> out;
  for (const AnnualPoint& pa : a.points) {
    if (!pa.value) continue;
    for (const AnnualPoint& pb : b.points) {
      if (pb.year == pa.year && pb.value) {
        out.push_back({pa.year, *pa.value, *pb.value});
        break;
      }
    }
  }
  if (out.empty())
    throw Error("no overlap between series '" + a.name + "' and '" + b.name + "'");
  return out;
}

AnnualSeries load_series_csv(const std::string& path, ExternalKind kind,
                             const std::string& name) {
  auto lines = split_lines(read_file(path));
  if (lines.empty() || trim(lines[0]) != "year,value")
    throw Error(path + ": expected header 'year,value'");
  std::map<int, std::optional<double>> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    std::string where = path + " line " + std::to_string(i + 1);
    auto fields = parse_csv_fields(lines[i]);
    if (fields.size() != 2) throw Error(where + ": expected 2 fields");
    int year;
    try {
      year = std::stoi(trim(fields[0]));
    } catch (const std::exception&) {
      throw Error(where + ": unparseable year '" + fields[0] + "'");
    }
    std::optional<double> value;
    std::string raw = trim(fields[1]);
    if (!raw.empty()) {
      try {
        size_t used = 0;
        value = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
      } catch (const std::exception&) {
        throw Error(where + ": unparseable value '" + raw + "'");
      }
      if (kind == ExternalKind::trends && (*value < 0.0 || *value > 100.0))
        throw Error(where + ": trends value " + format_real(*value) + " outside [0,100]");
    }
    if (!rows.emplace(year, value).second)
      throw Error(where + ": duplicate year " + std::to_string(year));
  }
  std::vector<AnnualPoint> points;
  for (const auto& [year, value] : rows) points.push_back({year, value});
  std::string unit = kind == ExternalKind::trends ? "gt-index"
                     : kind == ExternalKind::approval ? "percent"
                                                      : "";
  return make_annual_series(name.empty() ? path : name, unit, std::move(points),
                            Provenance::external_file);
}

std::string series_csv(const AnnualSeries& series) {
  std::ostringstream out;
  out << "year,value\n";
  for (const AnnualPoint& p : series.points) {
    out << p.year << ',';
    if (p.value) out << format_real(*p.value);
    out << '\n';
  }
  return out.str();
}

void save_series_csv(const std::string& path, const AnnualSeries& series) {
  write_file(path, series_csv(series));
}

EventSeries load_events_csv(const std::string& path, const std::string& name) {
  auto lines = split_lines(read_file(path));
  if (lines.empty() || trim(lines[0]) != "date,label")
    throw Error(path + ": expected header 'date,label'");
  EventSeries out;
  out.name = name.empty() ? path : name;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    std::string where = path + " line " + std::to_string(i + 1);
    auto fields = parse_csv_fields(lines[i]);
    if (fields.size() != 2) throw Error(where + ": expected 2 fields");
    Event e;
    try {
      e.date = parse_date(trim(fields[0]));
    } catch (const Error& err) {
      throw Error(where + ": " + err.what());
    }
    e.label = trim(fields[1]);
    if (e.label.empty()) throw Error(where + ": empty label");
    out.events.push_back(std::move(e));
  }
  return out;
}

}  // namespace newscause
