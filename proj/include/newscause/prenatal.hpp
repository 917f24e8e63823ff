// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newscause/series.hpp"

namespace newscause {

/// Maximal run of consecutive years with volume and similarity z-scores both
/// at or above the detection threshold.
struct PrenatalPeriod {
  std::string domain;
  int start_year = 0;
  int end_year = 0;
  double peak_volume_z = 0.0;
  double peak_similarity_z = 0.0;
};

/// Z-scores both series over their aligned span, then collects maximal runs
/// of consecutive calendar years where both z-values are >= tau. Periods come
/// back sorted by start_year.
std::vector<PrenatalPeriod> detect_prenatal(const AnnualSeries& volume,
                                            const AnnualSeries& similarity, double tau = 1.0,
                                            const std::string& domain = "");

struct EventMatch {
  Event event;
  std::optional<PrenatalPeriod> period;
};

struct ForeshadowReport {
  int window_years = 3;
  std::size_t n_events = 0;
  std::size_t n_foreshadowed = 0;
  std::optional<double> fraction;  // absent when there are no events
  std::vector<EventMatch> per_event;
};

/// An event counts as foreshadowed when some period started by the event year
/// and ended no more than `window` years before it. Among qualifying periods
/// the latest one (largest end_year, then start_year) is reported.
ForeshadowReport foreshadowing(const std::vector<PrenatalPeriod>& periods,
                               const std::vector<Event>& events, int window = 3);

std::string prenatal_json(const std::vector<PrenatalPeriod>& periods);
std::string foreshadow_json(const ForeshadowReport& report);
std::string foreshadow_csv(const ForeshadowReport& report);

}  // namespace newscause
