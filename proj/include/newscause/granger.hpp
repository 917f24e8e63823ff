// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newscause/series.hpp"

namespace newscause {

enum class Verdict { causal, not_causal };

struct GrangerResult {
  std::string cause = "x";
  std::string effect = "y";
  int lag = 1;
  double f_stat = 0.0;  // +infinity when the unrestricted fit is perfect
  double critical_value = 0.0;
  double alpha = 0.05;
  int n_obs = 0;  // usable regression rows, T - lag
  Verdict verdict = Verdict::not_causal;
  bool perfect_fit_warning = false;
};

/// Does x Granger-cause y? Restricted model regresses y_t on its own lags,
/// the unrestricted model adds lags of x; the verdict compares the F
/// statistic against f_quantile(1 - alpha, lag, n_obs - 2*lag - 1), strict.
GrangerResult granger_test(const std::vector<double>& x, const std::vector<double>& y,
                           int lag, double alpha);

/// AIC of the unrestricted model at the given lag: n ln(RSS/n) + 2k.
double granger_aic(const std::vector<double>& x, const std::vector<double>& y, int lag);

/// Index of the minimal AIC; ties go to the smaller lag. aics[i] is lag i+1.
int pick_min_aic_lag(const std::vector<double>& aics);

/// Lag in [1, max_lag] minimizing the unrestricted-model AIC.
int select_lag(const std::vector<double>& x, const std::vector<double>& y, int max_lag);

struct BatteryEdge {
  std::string cause;
  std::string effect;
};

struct EdgeOutcome {
  BatteryEdge edge;
  std::optional<GrangerResult> result;  // empty when skipped
  std::string skip_reason;
};

struct BatteryResult {
  std::vector<EdgeOutcome> edges;
  std::optional<double> median_f_stat;
  std::optional<double> median_critical_value;
};

struct BatteryOptions {
  double alpha = 0.05;
  std::optional<int> fixed_lag;  // empty -> AIC selection up to max_lag
  int max_lag = 3;
  bool difference = true;  // first-difference both series before aligning
};

/// Runs granger_test per edge over the named series. Edge failures are
/// recorded as skips with a reason and never abort the battery; medians
/// are taken across the completed edges.
BatteryResult causal_battery(const std::map<std::string, AnnualSeries>& series,
                             const std::vector<BatteryEdge>& edges,
                             const BatteryOptions& options = {});

/// Edge list file: JSON array of {"cause": ..., "effect": ...}.
std::vector<BatteryEdge> load_edges_json(const std::string& path);

std::string battery_json(const BatteryResult& battery);
std::string battery_csv(const BatteryResult& battery);

}  // namespace newscause
