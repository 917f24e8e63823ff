// SPDX-License-Identifier: Apache-2.0
#include "newscause/prenatal.hpp"

#include <doctest.h>

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newscause/error.hpp"

using namespace newscause;

using doctest::Contains;

namespace {

AnnualSeries annual(const std::string& name, int start_year,
                    const std::vector<double>& values) {
  std::vector<AnnualPoint> points;
  for (size_t i = 0; i < values.size(); ++i)
    points.push_back({start_year + static_cast<int>(i), values[i]});
  return make_annual_series(name, "units", std::move(points), Provenance::corpus_derived);
}

// 8 background years plus one spike at 2013; any such shape z-scores the
// spike to exactly 2*sqrt(2) and the background to -1/(2*sqrt(2))
AnnualSeries spike_at_2013(const std::string& name, double background, double spike) {
  std::vector<double> values(9, background);
  values[5] = spike;  // 2008..2016, index 5 is 2013
  return annual(name, 2008, values);
}

Event event_on(const std::string& date, const std::string& label) {
  return {parse_date(date), label};
}

PrenatalPeriod period(int start, int end) {
  return {"d", start, end, 2.0, 2.0};
}

}  // namespace

TEST_SUITE("prenatal") {

TEST_CASE("joint spike yields one period with closed-form peaks") {
  const AnnualSeries volume = spike_at_2013("d.volume", 10.0, 50.0);
  const AnnualSeries similarity = spike_at_2013("d.similarity", 0.2, 0.8);
  const auto periods = detect_prenatal(volume, similarity, 1.0, "d");
  REQUIRE(periods.size() == 1);
  CHECK(periods[0].domain == "d");
  CHECK(periods[0].start_year == 2013);
  CHECK(periods[0].end_year == 2013);
  CHECK(periods[0].peak_volume_z == doctest::Approx(2.8284271247461903).epsilon(1e-12));
  CHECK(periods[0].peak_similarity_z == doctest::Approx(2.8284271247461903).epsilon(1e-12));
}

TEST_CASE("a spike in only one series is not a period") {
  const AnnualSeries volume = spike_at_2013("d.volume", 10.0, 50.0);
  // similarity spikes elsewhere, so no year is hot in both
  std::vector<double> sim(9, 0.2);
  sim[2] = 0.8;  // 2010
  const auto periods = detect_prenatal(volume, annual("d.similarity", 2008, sim), 1.0, "d");
  CHECK(periods.empty());
}

TEST_CASE("consecutive hot years merge into one period") {
  std::vector<double> values(9, 10.0);
  values[4] = 50.0;  // 2012
  values[5] = 55.0;  // 2013
  const AnnualSeries volume = annual("d.volume", 2008, values);
  const AnnualSeries similarity = annual("d.similarity", 2008, values);
  const auto periods = detect_prenatal(volume, similarity, 1.0, "d");
  REQUIRE(periods.size() == 1);
  CHECK(periods[0].start_year == 2012);
  CHECK(periods[0].end_year == 2013);
}

TEST_CASE("a calendar gap between hot years splits the run") {
  // 2013 is absent from both series; 2012 and 2014 are hot but not adjacent
  std::vector<AnnualPoint> points;
  for (int year : {2008, 2009, 2010, 2011, 2012, 2014, 2015, 2016}) {
    const double v = (year == 2012 || year == 2014) ? 50.0 : 10.0;
    points.push_back({year, v});
  }
  const AnnualSeries volume =
      make_annual_series("d.volume", "articles", points, Provenance::corpus_derived);
  const AnnualSeries similarity =
      make_annual_series("d.similarity", "score", points, Provenance::corpus_derived);
  const auto periods = detect_prenatal(volume, similarity, 1.0, "d");
  REQUIRE(periods.size() == 2);
  CHECK(periods[0].start_year == 2012);
  CHECK(periods[0].end_year == 2012);
  CHECK(periods[1].start_year == 2014);
  CHECK(periods[1].end_year == 2014);
}

TEST_CASE("raising tau only removes periods") {
  const AnnualSeries volume = spike_at_2013("d.volume", 10.0, 50.0);
  const AnnualSeries similarity = spike_at_2013("d.similarity", 0.2, 0.8);
  // spike z is 2*sqrt(2) ~ 2.83
  CHECK(detect_prenatal(volume, similarity, 2.8).size() == 1);
  CHECK(detect_prenatal(volume, similarity, 2.9).empty());
  // with an unreachable low threshold every aligned year is hot
  const auto all_hot = detect_prenatal(volume, similarity, -10.0);
  REQUIRE(all_hot.size() == 1);
  CHECK(all_hot[0].start_year == 2008);
  CHECK(all_hot[0].end_year == 2016);
}

TEST_CASE("degenerate inputs are rejected with series names") {
  const AnnualSeries volume = spike_at_2013("d.volume", 10.0, 50.0);
  const AnnualSeries flat = annual("d.similarity", 2008, std::vector<double>(9, 0.5));
  CHECK_THROWS_WITH_AS(detect_prenatal(volume, flat), Contains("constant series"), Error);
  CHECK_THROWS_WITH_AS(detect_prenatal(volume, flat), Contains("d.similarity"), Error);

  const AnnualSeries two_years = annual("d.similarity", 2013, {0.1, 0.9});
  CHECK_THROWS_WITH_AS(detect_prenatal(volume, two_years),
                       Contains("need at least 3 aligned years"), Error);
}

TEST_CASE("events inside or shortly after a period are foreshadowed") {
  const std::vector<PrenatalPeriod> periods = {period(1996, 1999)};
  const std::vector<Event> events = {
      event_on("1998-10-21", "children's privacy act"),
      event_on("2002-06-01", "boundary: period end within window"),
      event_on("2003-06-01", "just outside the window"),
      event_on("1995-06-01", "before the period opened"),
      event_on("2010-06-01", "long after"),
  };
  const ForeshadowReport report = foreshadowing(periods, events, 3);
  CHECK(report.n_events == 5);
  CHECK(report.n_foreshadowed == 2);
  REQUIRE(report.per_event.size() == 5);
  CHECK(report.per_event[0].period.has_value());
  CHECK(report.per_event[1].period.has_value());  // 1999 >= 2002 - 3
  CHECK_FALSE(report.per_event[2].period.has_value());
  CHECK_FALSE(report.per_event[3].period.has_value());
  CHECK_FALSE(report.per_event[4].period.has_value());
}

TEST_CASE("foreshadowed fraction is exact") {
  const std::vector<PrenatalPeriod> periods = {period(1996, 1999)};
  std::vector<Event> events;
  for (int year : {1996, 1997, 1998, 1999, 2002}) {  // 5 hits
    events.push_back(event_on(std::to_string(year) + "-01-15", "hit"));
  }
  for (int year : {1990, 1991, 1992, 1993, 1994, 2005, 2008}) {  // 7 misses
    events.push_back(event_on(std::to_string(year) + "-01-15", "miss"));
  }
  const ForeshadowReport report = foreshadowing(periods, events, 3);
  CHECK(report.n_events == 12);
  CHECK(report.n_foreshadowed == 5);
  REQUIRE(report.fraction.has_value());
  CHECK(*report.fraction == doctest::Approx(0.4166666666666667).epsilon(1e-12));
}

TEST_CASE("no events means no defined fraction") {
  const ForeshadowReport report = foreshadowing({period(1996, 1999)}, {}, 3);
  CHECK(report.n_events == 0);
  CHECK(report.n_foreshadowed == 0);
  CHECK_FALSE(report.fraction.has_value());
  CHECK_THROWS_WITH_AS(foreshadowing({}, {}, 0), Contains("window must be >= 1"), Error);
}

TEST_CASE("widening the window can only add matches") {
  const std::vector<PrenatalPeriod> periods = {period(1996, 1999)};
  const std::vector<Event> events = {event_on("2003-06-01", "late act")};
  CHECK(foreshadowing(periods, events, 3).n_foreshadowed == 0);
  CHECK(foreshadowing(periods, events, 4).n_foreshadowed == 1);
  std::size_t prev = 0;
  for (int window = 1; window <= 10; ++window) {
    const std::size_t hits = foreshadowing(periods, events, window).n_foreshadowed;
    CHECK(hits >= prev);
    prev = hits;
  }
}

TEST_CASE("among qualifying periods the latest wins") {
  const std::vector<Event> events = {event_on("1998-06-01", "act")};
  const ForeshadowReport by_end =
      foreshadowing({period(1996, 1997), period(1995, 1999)}, events, 3);
  REQUIRE(by_end.per_event[0].period.has_value());
  CHECK(by_end.per_event[0].period->end_year == 1999);

  const ForeshadowReport by_start =
      foreshadowing({period(1996, 1999), period(1998, 1999)}, events, 3);
  REQUIRE(by_start.per_event[0].period.has_value());
  CHECK(by_start.per_event[0].period->start_year == 1998);
}

TEST_CASE("emitted JSON and CSV round-trip the report") {
  const AnnualSeries volume = spike_at_2013("d.volume", 10.0, 50.0);
  const AnnualSeries similarity = spike_at_2013("d.similarity", 0.2, 0.8);
  const auto periods = detect_prenatal(volume, similarity, 1.0, "d");

  const nlohmann::json pj = nlohmann::json::parse(prenatal_json(periods));
  REQUIRE(pj["periods"].size() == 1);
  CHECK(pj["periods"][0]["domain"] == "d");
  CHECK(pj["periods"][0]["start_year"] == 2013);
  CHECK(pj["periods"][0]["peak_volume_z"].get<double>() ==
        doctest::Approx(2.8284271247461903).epsilon(1e-11));

  const std::vector<Event> events = {event_on("2014-07-01", "act one"),
                                     event_on("2030-01-01", "act two")};
  const ForeshadowReport report = foreshadowing(periods, events, 3);
  const nlohmann::json fj = nlohmann::json::parse(foreshadow_json(report));
  CHECK(fj["window_years"] == 3);
  CHECK(fj["n_events"] == 2);
  CHECK(fj["n_foreshadowed"] == 1);
  CHECK(fj["fraction"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fj["events"][0]["foreshadowed"] == true);
  CHECK(fj["events"][0]["period"]["end_year"] == 2013);
  CHECK(fj["events"][1]["foreshadowed"] == false);
  CHECK(fj["events"][1]["period"].is_null());

  CHECK(foreshadow_csv(report) ==
        "date,label,foreshadowed,period_start_year,period_end_year\n"
        "2014-07-01,act one,true,2013,2013\n"
        "2030-01-01,act two,false,,\n");

  const nlohmann::json empty = nlohmann::json::parse(foreshadow_json(foreshadowing({}, {}, 3)));
  CHECK(empty["fraction"].is_null());
}

}
