// SPDX-License-Identifier: Apache-2.0
#include "newscause/granger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "newscause/error.hpp"
#include "newscause/fdist.hpp"
#include "newscause/ols.hpp"
#include "newscause/util.hpp"

namespace newscause {

namespace {

// Lagged design matrices. Rows are t = lag .. T-1; the restricted design is
// [1, y_{t-1..t-lag}], the unrestricted one appends x_{t-1..t-lag}.
struct LagDesign {
  Matrix restricted;
  Matrix unrestricted;
  std::vector<double> response;
};

LagDesign build_design(const std::vector<double>& x, const std::vector<double>& y, int lag) {
  if (lag < 1) throw Error("granger: lag must be >= 1");
  if (x.size() != y.size()) throw Error("granger: series lengths differ");
  int t_total = static_cast<int>(y.size());
  int min_t = 3 * lag + 2;
  if (t_total < min_t)
    throw Error("granger: need series length T >= " + std::to_string(min_t) + " for lag " +
                std::to_string(lag) + ", got " + std::to_string(t_total));
  int n = t_total - lag;
  LagDesign d{Matrix(n, 1 + lag), Matrix(n, 1 + 2 * lag), {}};
  d.response.resize(static_cast<size_t>(n));
  for (int row = 0; row < n; ++row) {
    int t = row + lag;
    d.response[static_cast<size_t>(row)] = y[static_cast<size_t>(t)];
    d.restricted.at(row, 0) = 1.0;
    d.unrestricted.at(row, 0) = 1.0;
    for (int p = 1; p <= lag; ++p) {
      d.restricted.at(row, p) = y[static_cast<size_t>(t - p)];
      d.unrestricted.at(row, p) = y[static_cast<size_t>(t - p)];
      d.unrestricted.at(row, lag + p) = x[static_cast<size_t>(t - p)];
    }
  }
  return d;
}

bool is_perfect_fit(double rss_u, const std::vector<double>& response) {
  double scale = 0.0;
  for (double v : response) scale += v * v;
  return rss_u <= 1e-10 * scale + 1e-300;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

GrangerResult granger_test(const std::vector<double>& x, const std::vector<double>& y,
                           int lag, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("granger: alpha must be in (0,1)");
  LagDesign d = build_design(x, y, lag);
  OlsFit restricted = ols(d.restricted, d.response);
  OlsFit unrestricted = ols(d.unrestricted, d.response);

  GrangerResult r;
  r.lag = lag;
  r.alpha = alpha;
  r.n_obs = unrestricted.n;
  int df2 = unrestricted.n - unrestricted.k;  // T - lag - 2*lag - 1
  r.critical_value = f_quantile(1.0 - alpha, lag, df2);

  if (is_perfect_fit(unrestricted.rss, d.response)) {
    r.f_stat = std::numeric_limits<double>::infinity();
    r.perfect_fit_warning = true;
    r.verdict = Verdict::causal;
    return r;
  }
  double num = (restricted.rss - unrestricted.rss) / lag;
  double den = unrestricted.rss / df2;
  r.f_stat = std::max(0.0, num / den);
  r.verdict = r.f_stat > r.critical_value ? Verdict::causal : Verdict::not_causal;
  return r;
}

double granger_aic(const std::vector<double>& x, const std::vector<double>& y, int lag) {
  LagDesign d = build_design(x, y, lag);
  OlsFit fit = ols(d.unrestricted, d.response);
  double n = fit.n;
  if (fit.rss <= 0.0) return -std::numeric_limits<double>::infinity();
  return n * std::log(fit.rss / n) + 2.0 * fit.k;
}

int pick_min_aic_lag(const std::vector<double>& aics) {
  if (aics.empty()) throw Error("pick_min_aic_lag: empty candidate list");
  size_t best = 0;
  for (size_t i = 1; i < aics.size(); ++i)
    if (aics[i] < aics[best]) best = i;  // strict: ties keep the smaller lag
  return static_cast<int>(best) + 1;
}

int select_lag(const std::vector<double>& x, const std::vector<double>& y, int max_lag) {
  if (max_lag < 1) throw Error("select_lag: max_lag must be >= 1");
  std::vector<double> aics;
  for (int lag = 1; lag <= max_lag; ++lag) aics.push_back(granger_aic(x, y, lag));
  return pick_min_aic_lag(aics);
}

BatteryResult causal_battery(const std::map<std::string, AnnualSeries>& series,
                             const std::vector<BatteryEdge>& edges,
                             const BatteryOptions& options) {
  BatteryResult battery;
  for (const BatteryEdge& edge : edges) {
    EdgeOutcome outcome{edge, std::nullopt, ""};
    try {
      auto ci = series.find(edge.cause);
      if (ci == series.end()) throw Error("unknown series '" + edge.cause + "'");
      auto ei = series.find(edge.effect);
      if (ei == series.end()) throw Error("unknown series '" + edge.effect + "'");
      AnnualSeries cause = ci->second;
      AnnualSeries effect = ei->second;
      if (options.difference) {
        cause = difference(cause);
        effect = difference(effect);
      }
      std::vector<AlignedPoint> aligned = align(cause, effect);
      std::vector<double> x, y;
      for (const AlignedPoint& p : aligned) {
        x.push_back(p.a);
        y.push_back(p.b);
      }
      int t_total = static_cast<int>(aligned.size());
      int lag;
      if (options.fixed_lag) {
        lag = *options.fixed_lag;
      } else {
        // cap the AIC sweep at the largest lag the sample can support
        int feasible = (t_total - 2) / 3;
        int max_lag = std::min(options.max_lag, feasible);
        if (max_lag < 1)
          throw Error("aligned span too short (" + std::to_string(t_total) + " points)");
        lag = select_lag(x, y, max_lag);
      }
      GrangerResult r = granger_test(x, y, lag, options.alpha);
      r.cause = edge.cause;
      r.effect = edge.effect;
      outcome.result = std::move(r);
    } catch (const Error& e) {
      outcome.skip_reason = e.what();
    }
    battery.edges.push_back(std::move(outcome));
  }

  std::vector<double> f_stats, criticals;
  for (const EdgeOutcome& o : battery.edges) {
    if (!o.result) continue;
    f_stats.push_back(o.result->f_stat);
    criticals.push_back(o.result->critical_value);
  }
  if (!f_stats.empty()) {
    battery.median_f_stat = median(f_stats);
    battery.median_critical_value = median(criticals);
  }
  return battery;
}

std::vector<BatteryEdge> load_edges_json(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": malformed JSON: " + e.what());
  }
  if (!j.is_array()) throw Error(path + ": expected a JSON array of {cause, effect}");
  std::vector<BatteryEdge> edges;
  for (const auto& item : j) {
    try {
      edges.push_back({item.at("cause").get<std::string>(),
                       item.at("effect").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(path + ": bad edge entry: " + e.what());
    }
  }
  return edges;
}

namespace {

nlohmann::json granger_result_json(const GrangerResult& r) {
  nlohmann::json j;
  j["cause"] = r.cause;
  j["effect"] = r.effect;
  j["lag"] = r.lag;
  if (std::isfinite(r.f_stat)) j["f_stat"] = round_real12(r.f_stat);
  else j["f_stat"] = nullptr;  // perfect fit; JSON has no infinity
  j["critical_value"] = round_real12(r.critical_value);
  j["alpha"] = r.alpha;
  j["n_obs"] = r.n_obs;
  j["verdict"] = r.verdict == Verdict::causal ? "causal" : "not-causal";
  j["perfect_fit_warning"] = r.perfect_fit_warning;
  return j;
}

}  // namespace

std::string battery_json(const BatteryResult& battery) {
  nlohmann::json j;
  j["edges"] = nlohmann::json::array();
  for (const EdgeOutcome& o : battery.edges) {
    nlohmann::json e;
    e["cause"] = o.edge.cause;
    e["effect"] = o.edge.effect;
    if (o.result) {
      e["status"] = "ok";
      e["result"] = granger_result_json(*o.result);
    } else {
      e["status"] = "skipped";
      e["reason"] = o.skip_reason;
    }
    j["edges"].push_back(e);
  }
  if (battery.median_f_stat && std::isfinite(*battery.median_f_stat))
    j["median_f_stat"] = round_real12(*battery.median_f_stat);
  else
    j["median_f_stat"] = nullptr;
  if (battery.median_critical_value)
    j["median_critical_value"] = round_real12(*battery.median_critical_value);
  else
    j["median_critical_value"] = nullptr;
  return j.dump(2) + "\n";
}

std::string battery_csv(const BatteryResult& battery) {
  std::ostringstream out;
  out << "cause,effect,status,lag,f_stat,critical_value,alpha,n_obs,verdict,reason\n";
  for (const EdgeOutcome& o : battery.edges) {
    out << csv_field(o.edge.cause) << ',' << csv_field(o.edge.effect) << ',';
    if (o.result) {
      const GrangerResult& r = *o.result;
      out << "ok," << r.lag << ','
          << (std::isfinite(r.f_stat) ? format_real(r.f_stat) : "inf") << ','
          << format_real(r.critical_value) << ',' << format_real(r.alpha) << ',' << r.n_obs
          << ',' << (r.verdict == Verdict::causal ? "causal" : "not-causal") << ",\n";
    } else {
      out << "skipped,,,,,," << csv_field(o.skip_reason) << '\n';
    }
  }
  return out.str();
}

}  // namespace newscause
