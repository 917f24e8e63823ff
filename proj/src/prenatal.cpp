// SPDX-License-Identifier: Apache-2.0
#include "newscause/prenatal.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "newscause/error.hpp"
#include "newscause/util.hpp"

namespace newscause {

using nlohmann::json;

std::vector<PrenatalPeriod> detect_prenatal(const AnnualSeries& volume,
                                            const AnnualSeries& similarity, double tau,
                                            const std::string& domain) {
  const auto aligned = align(volume, similarity);
  if (aligned.size() < 3) {
    throw Error("detect_prenatal: need at least 3 aligned years between '" + volume.name +
                "' and '" + similarity.name + "'");
  }

  // Restrict each series to the aligned span before z-scoring, so years the
  // other series lacks never shift the baseline.
  std::vector<AnnualPoint> vol_pts;
  std::vector<AnnualPoint> sim_pts;
  for (const auto& p : aligned) {
    vol_pts.push_back({p.year, p.a});
    sim_pts.push_back({p.year, p.b});
  }
  const AnnualSeries vol_z = zscore(
      make_annual_series(volume.name, volume.unit, std::move(vol_pts), volume.provenance));
  const AnnualSeries sim_z = zscore(make_annual_series(similarity.name, similarity.unit,
                                                       std::move(sim_pts), similarity.provenance));

  std::vector<PrenatalPeriod> periods;
  PrenatalPeriod cur;
  bool open = false;
  int prev_year = 0;
  for (std::size_t i = 0; i < vol_z.points.size(); ++i) {
    const int year = vol_z.points[i].year;
    const double vz = *vol_z.points[i].value;
    const double sz = *sim_z.points[i].value;
    const bool hot = vz >= tau && sz >= tau;
    if (open && (!hot || year != prev_year + 1)) {
      periods.push_back(cur);
      open = false;
    }
    if (hot) {
      if (!open) {
        cur = PrenatalPeriod{domain, year, year, vz, sz};
        open = true;
      } else {
        cur.end_year = year;
        cur.peak_volume_z = std::max(cur.peak_volume_z, vz);
        cur.peak_similarity_z = std::max(cur.peak_similarity_z, sz);
      }
    }
    prev_year = year;
  }
  if (open) periods.push_back(cur);
  return periods;
}

ForeshadowReport foreshadowing(const std::vector<PrenatalPeriod>& periods,
                               const std::vector<Event>& events, int window) {
  if (window < 1) throw Error("foreshadowing: window must be >= 1");
  ForeshadowReport report;
  report.window_years = window;
  report.n_events = events.size();
  for (const auto& event : events) {
    const int year = event.date.year;
    EventMatch match{event, std::nullopt};
    for (const auto& period : periods) {
      if (period.start_year > year) continue;
      if (period.end_year < year - window) continue;
      if (!match.period || period.end_year > match.period->end_year ||
          (period.end_year == match.period->end_year &&
           period.start_year > match.period->start_year)) {
        match.period = period;
      }
    }
    if (match.period) report.n_foreshadowed += 1;
    report.per_event.push_back(std::move(match));
  }
  if (report.n_events > 0) {
    report.fraction =
        static_cast<double>(report.n_foreshadowed) / static_cast<double>(report.n_events);
  }
  return report;
}

namespace {

json period_json(const PrenatalPeriod& p) {
  json j;
  j["domain"] = p.domain;
  j["start_year"] = p.start_year;
  j["end_year"] = p.end_year;
  j["peak_volume_z"] = round_real12(p.peak_volume_z);
  j["peak_similarity_z"] = round_real12(p.peak_similarity_z);
  return j;
}

}  // namespace

std::string prenatal_json(const std::vector<PrenatalPeriod>& periods) {
  json arr = json::array();
  for (const auto& p : periods) arr.push_back(period_json(p));
  json doc;
  doc["periods"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string foreshadow_json(const ForeshadowReport& report) {
  json doc;
  doc["window_years"] = report.window_years;
  doc["n_events"] = report.n_events;
  doc["n_foreshadowed"] = report.n_foreshadowed;
  doc["fraction"] = report.fraction ? json(round_real12(*report.fraction)) : json();
  json events = json::array();
  for (const auto& match : report.per_event) {
    json e;
    e["date"] = format_date(match.event.date);
    e["label"] = match.event.label;
    e["foreshadowed"] = match.period.has_value();
    e["period"] = match.period ? period_json(*match.period) : json();
    events.push_back(std::move(e));
  }
  doc["events"] = std::move(events);
  return doc.dump(2) + "\n";
}

std::string foreshadow_csv(const ForeshadowReport& report) {
  std::string out = "date,label,foreshadowed,period_start_year,period_end_year\n";
  for (const auto& match : report.per_event) {
    out += format_date(match.event.date) + "," + csv_field(match.event.label) + ",";
    out += match.period ? "true" : "false";
    out += ",";
    if (match.period) out += std::to_string(match.period->start_year);
    out += ",";
    if (match.period) out += std::to_string(match.period->end_year);
    out += "\n";
  }
  return out;
}

}  // namespace newscause
