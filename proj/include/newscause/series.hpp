// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "newscause/article.hpp"

namespace newscause {

struct AnnualPoint {
  int year = 0;
  std::optional<double> value;

  bool operator==(const AnnualPoint&) const = default;
};

enum class Provenance { corpus_derived, external_file };

/// Year-indexed series of real values; years strictly increasing, gaps
/// carried as explicit absent values where a span requires them.
struct AnnualSeries {
  std::string name;
  std::string unit;
  std::vector<AnnualPoint> points;
  Provenance provenance = Provenance::corpus_derived;

  std::optional<double> value_at(int year) const;
};

/// Validates strictly increasing years and returns the assembled series.
AnnualSeries make_annual_series(std::string name, std::string unit,
                                std::vector<AnnualPoint> points,
                                Provenance provenance);

struct Event {
  Date date;
  std::string label;
};

struct EventSeries {
  std::string name;
  std::vector<Event> events;
};

/// Article count per calendar year; zero-article years inside the corpus
/// span are emitted as 0.
AnnualSeries volume_series(const Corpus& corpus, const std::string& name = "volume");

/// (v_to - v_from) / v_from * 100. The from-value must be present and nonzero.
double pct_change(const AnnualSeries& series, int from_year, int to_year);

/// Fraction of the year's articles satisfying the predicate.
double share_of_year(const Corpus& corpus, int year,
                     const std::function<bool(const Article&)>& predicate);

/// (v - mean) / sd with population sd over nonabsent points; absent stays
/// absent. Needs >= 3 nonabsent points and nonzero sd.
AnnualSeries zscore(const AnnualSeries& series);

/// First difference over consecutive-year pairs; year gaps break the chain.
AnnualSeries difference(const AnnualSeries& series);

struct AlignedPoint {
  int year = 0;
  double a = 0.0;
  double b = 0.0;
};

/// Years where both series have nonabsent values, ascending.
std::vector<AlignedPoint> align(const AnnualSeries& a, const AnnualSeries& b);

enum class ExternalKind { trends, approval, generic };

/// CSV with header "year,value"; empty value field means absent.
/// trends values must lie in [0,100].
AnnualSeries load_series_csv(const std::string& path, ExternalKind kind,
                             const std::string& name = "");
std::string series_csv(const AnnualSeries& series);
void save_series_csv(const std::string& path, const AnnualSeries& series);

/// CSV with header "date,label".
EventSeries load_events_csv(const std::string& path, const std::string& name = "");

}  // namespace newscause
