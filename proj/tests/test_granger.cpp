// SPDX-License-Identifier: Apache-2.0
#include "newscause/granger.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newscause/error.hpp"
#include "newscause/rng.hpp"
#include "newscause/util.hpp"

using namespace newscause;

using doctest::Contains;

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const char* name) {
    path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const std::string p = (path / name).string();
    write_file(p, content);
    return p;
  }
};

// x white noise, y driven by x at the given lag plus small noise
void coupled(Rng& rng, int t_total, int lag, std::vector<double>& x,
             std::vector<double>& y) {
  x.resize(static_cast<size_t>(t_total));
  y.resize(static_cast<size_t>(t_total));
  for (int t = 0; t < t_total; ++t) {
    x[static_cast<size_t>(t)] = rng.normal();
    double driven = t >= lag ? 0.9 * x[static_cast<size_t>(t - lag)] : 0.0;
    y[static_cast<size_t>(t)] = driven + 0.1 * rng.normal();
  }
}

AnnualSeries annual(const std::string& name, const std::vector<double>& values,
                    int start_year = 1900) {
  std::vector<AnnualPoint> points;
  for (size_t i = 0; i < values.size(); ++i)
    points.push_back({start_year + static_cast<int>(i), values[i]});
  return make_annual_series(name, "units", std::move(points), Provenance::external_file);
}

}  // namespace

TEST_SUITE("granger") {

TEST_CASE("series shorter than 3*lag + 2 are rejected") {
  std::vector<double> four = {1.0, 2.0, 1.5, 2.5};
  CHECK_THROWS_WITH_AS(granger_test(four, four, 1, 0.05), Contains("T >= 5"), Error);
  Rng rng(7);
  std::vector<double> x, y;
  coupled(rng, 5, 1, x, y);
  CHECK_NOTHROW(granger_test(x, y, 1, 0.05));
  coupled(rng, 7, 2, x, y);
  CHECK_THROWS_AS(granger_test(x, y, 2, 0.05), Error);  // needs T >= 8
}

TEST_CASE("driver is detected, reverse direction is not") {
  Rng rng(42);
  std::vector<double> x, y;
  coupled(rng, 200, 1, x, y);

  GrangerResult forward = granger_test(x, y, 1, 0.05);
  CHECK(forward.verdict == Verdict::causal);
  CHECK(forward.f_stat > forward.critical_value);
  CHECK(forward.n_obs == 199);
  CHECK_FALSE(forward.perfect_fit_warning);
  // df2 = 199 - 3 = 196, a 5% critical value a little under 3.9
  CHECK(forward.critical_value > 3.8);
  CHECK(forward.critical_value < 4.0);

  GrangerResult reverse = granger_test(y, x, 1, 0.05);
  CHECK(reverse.verdict == Verdict::not_causal);
}

TEST_CASE("noiseless lag relation reports a perfect fit") {
  Rng rng(11);
  std::vector<double> x(60), y(60);
  for (int t = 0; t < 60; ++t) x[static_cast<size_t>(t)] = rng.normal();
  y[0] = 0.0;
  for (int t = 1; t < 60; ++t) y[static_cast<size_t>(t)] = x[static_cast<size_t>(t - 1)];

  GrangerResult r = granger_test(x, y, 1, 0.05);
  CHECK(std::isinf(r.f_stat));
  CHECK(r.verdict == Verdict::causal);
  CHECK(r.perfect_fit_warning);
}

TEST_CASE("tighter alpha raises the critical value") {
  Rng rng(99);
  std::vector<double> x, y;
  coupled(rng, 80, 1, x, y);
  GrangerResult loose = granger_test(x, y, 1, 0.10);
  GrangerResult tight = granger_test(x, y, 1, 0.01);
  CHECK(tight.critical_value > loose.critical_value);
  CHECK(loose.f_stat == doctest::Approx(tight.f_stat));
  CHECK_THROWS_AS(granger_test(x, y, 1, 0.0), Error);
  CHECK_THROWS_AS(granger_test(x, y, 1, 1.0), Error);
}

TEST_CASE("minimal AIC picks the smallest lag on ties") {
  CHECK(pick_min_aic_lag({5.0, 5.0, 7.0}) == 1);
  CHECK(pick_min_aic_lag({7.0, 5.0, 5.0}) == 2);
  CHECK(pick_min_aic_lag({9.0}) == 1);
  CHECK_THROWS_AS(pick_min_aic_lag({}), Error);
}

TEST_CASE("lag selection finds the true coupling lag") {
  Rng rng(123);
  std::vector<double> x, y;
  coupled(rng, 300, 2, x, y);
  CHECK(select_lag(x, y, 3) == 2);
  CHECK_THROWS_AS(select_lag(x, y, 0), Error);
}

TEST_CASE("battery runs edges independently and reports medians") {
  Rng rng(2023);
  std::vector<double> x, y;
  coupled(rng, 120, 1, x, y);

  std::map<std::string, AnnualSeries> series;
  series.emplace("driver", annual("driver", x));
  series.emplace("response", annual("response", y));
  series.emplace("stub", annual("stub", {1.0, 2.0, 1.5, 2.5}));

  std::vector<BatteryEdge> edges = {
      {"driver", "response"},
      {"driver", "ghost"},
      {"stub", "response"},
  };
  BatteryOptions options;
  options.difference = false;
  BatteryResult battery = causal_battery(series, edges, options);

  REQUIRE(battery.edges.size() == 3);
  REQUIRE(battery.edges[0].result.has_value());
  CHECK(battery.edges[0].result->verdict == Verdict::causal);
  CHECK(battery.edges[0].result->cause == "driver");
  CHECK(battery.edges[0].result->effect == "response");

  CHECK_FALSE(battery.edges[1].result.has_value());
  CHECK(battery.edges[1].skip_reason == "unknown series 'ghost'");

  // 4-point overlap cannot support any lag
  CHECK_FALSE(battery.edges[2].result.has_value());
  CHECK(battery.edges[2].skip_reason ==
        "aligned span too short (4 points)");

  // medians come from the single completed edge
  REQUIRE(battery.median_f_stat.has_value());
  CHECK(*battery.median_f_stat == doctest::Approx(battery.edges[0].result->f_stat));
  REQUIRE(battery.median_critical_value.has_value());
  CHECK(*battery.median_critical_value ==
        doctest::Approx(battery.edges[0].result->critical_value));
}

TEST_CASE("differencing shortens the usable sample by one year") {
  Rng rng(5);
  std::vector<double> x, y;
  coupled(rng, 100, 1, x, y);
  std::map<std::string, AnnualSeries> series;
  series.emplace("a", annual("a", x));
  series.emplace("b", annual("b", y));
  std::vector<BatteryEdge> edges = {{"a", "b"}};

  BatteryOptions level;
  level.difference = false;
  level.fixed_lag = 1;
  BatteryOptions diff;
  diff.difference = true;
  diff.fixed_lag = 1;

  BatteryResult on_levels = causal_battery(series, edges, level);
  BatteryResult on_changes = causal_battery(series, edges, diff);
  REQUIRE(on_levels.edges[0].result.has_value());
  REQUIRE(on_changes.edges[0].result.has_value());
  CHECK(on_levels.edges[0].result->n_obs == 99);
  CHECK(on_changes.edges[0].result->n_obs == 98);
  // the lagged-change coupling survives differencing
  CHECK(on_changes.edges[0].result->verdict == Verdict::causal);
}

TEST_CASE("empty battery has no medians") {
  BatteryResult battery = causal_battery({}, {});
  CHECK(battery.edges.empty());
  CHECK_FALSE(battery.median_f_stat.has_value());
  CHECK_FALSE(battery.median_critical_value.has_value());
}

TEST_CASE("battery JSON carries verdicts and encodes infinity as null") {
  Rng rng(31);
  std::vector<double> x(40), y(40);
  for (int t = 0; t < 40; ++t) x[static_cast<size_t>(t)] = rng.normal();
  y[0] = 0.0;
  for (int t = 1; t < 40; ++t) y[static_cast<size_t>(t)] = x[static_cast<size_t>(t - 1)];

  std::map<std::string, AnnualSeries> series;
  series.emplace("a", annual("a", x));
  series.emplace("b", annual("b", y));
  BatteryOptions options;
  options.difference = false;
  options.fixed_lag = 1;
  BatteryResult battery =
      causal_battery(series, {{"a", "b"}, {"a", "missing"}}, options);

  nlohmann::json j = nlohmann::json::parse(battery_json(battery));
  REQUIRE(j["edges"].size() == 2);
  CHECK(j["edges"][0]["status"] == "ok");
  CHECK(j["edges"][0]["result"]["verdict"] == "causal");
  CHECK(j["edges"][0]["result"]["f_stat"].is_null());
  CHECK(j["edges"][0]["result"]["perfect_fit_warning"] == true);
  CHECK(j["edges"][1]["status"] == "skipped");
  CHECK(j["edges"][1]["reason"] == "unknown series 'missing'");
  CHECK(j["median_f_stat"].is_null());
  CHECK_FALSE(j["median_critical_value"].is_null());

  std::string csv = battery_csv(battery);
  CHECK(csv.find("cause,effect,status,lag,f_stat,critical_value,alpha,n_obs,verdict,reason\n") == 0);
  CHECK(csv.find("a,b,ok,1,inf,") != std::string::npos);
  CHECK(csv.find("a,missing,skipped,,,,,,unknown series 'missing'") != std::string::npos);
}

TEST_CASE("edge lists load from JSON and reject malformed input") {
  TempDir dir("newscause_granger_edges");
  const std::string good =
      dir.file("edges.json", R"([{"cause": "a", "effect": "b"}, {"cause": "c", "effect": "d"}])");
  std::vector<BatteryEdge> edges = load_edges_json(good);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0].cause == "a");
  CHECK(edges[1].effect == "d");

  CHECK_THROWS_WITH_AS(load_edges_json(dir.file("broken.json", "[{")),
                       Contains("malformed JSON"), Error);
  CHECK_THROWS_WITH_AS(load_edges_json(dir.file("object.json", R"({"cause": "a"})")),
                       Contains("expected a JSON array"), Error);
  CHECK_THROWS_WITH_AS(load_edges_json(dir.file("partial.json", R"([{"cause": "a"}])")),
                       Contains("bad edge entry"), Error);
}

}
