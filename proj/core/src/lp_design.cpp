#include "lpqb/lp_design.hpp"

#include "lpqb/errors.hpp"

namespace lpqb {

TrimBounds trim_bounds(Eigen::Index raw_length, int lags, int horizon, SpecKind kind) {
  if (lags < 0 || horizon < 0)
    throw DataError("trim_bounds: lags and horizon must be non-negative");
  // Differences need y_{t-L-1}, one observation beyond the last lag.
  const Eigen::Index first = kind == SpecKind::LongDifference ? lags + 1 : lags;
  const Eigen::Index last = raw_length - 1 - horizon;
  if (last < first)
    throw DataError("trim_bounds: insufficient data (length " + std::to_string(raw_length) +
                    ", lags " + std::to_string(lags) + ", horizon " + std::to_string(horizon) +
                    ")");
  return {first, last};
}

namespace {

struct ColumnPlan {
  std::vector<std::string> names;
  int n_treat = 0;
};

ColumnPlan plan_columns(const Dataset& data, const SpecConfig& cfg, int lag_shift) {
  ColumnPlan plan;
  plan.n_treat = data.n_treatments();
  for (const auto& name : data.treatment_names) plan.names.push_back(name);
  plan.names.push_back("const");
  const bool ld = cfg.kind == SpecKind::LongDifference;
  for (int l = 1; l <= cfg.lags; ++l) {
    const int k = l + lag_shift;
    plan.names.push_back((ld ? "dy_lag" : "y_lag") + std::to_string(k));
  }
  for (int n = 1; n <= cfg.n_fourier; ++n) plan.names.push_back("sin" + std::to_string(n));
  for (int n = 1; n <= cfg.n_fourier; ++n) plan.names.push_back("cos" + std::to_string(n));
  for (const auto& name : data.control_names) plan.names.push_back(name);
  if (cfg.day_of_week)
    for (const char* d : {"dow_tue", "dow_wed", "dow_thu", "dow_fri", "dow_sat", "dow_sun"})
      plan.names.push_back(d);
  for (const auto& name : data.indicator_names) plan.names.push_back(name);
  return plan;
}

// Shared X/Z/Y assembly. The dependent offsets are y_{t+off} (LD subtracts
// y_{t-1}); lag_shift moves the outcome-lag controls back in time, used by
// the lead design so no dependent lead is also a regressor.
LpDesign assemble(const Dataset& data, const SpecConfig& cfg, TrimBounds bounds,
                  const std::vector<int>& y_offsets, int lag_shift) {
  const Eigen::Index t_count = bounds.count();
  const ColumnPlan plan = plan_columns(data, cfg, lag_shift);
  const auto j_count = static_cast<Eigen::Index>(plan.names.size());
  if (t_count <= j_count)
    throw DataError("build_design: trimmed sample T=" + std::to_string(t_count) +
                    " does not exceed column count J=" + std::to_string(j_count));

  CalendarFeatures cal;
  if (cfg.n_fourier > 0) cal = fourier_features(data.dates, cfg.n_fourier);
  Eigen::MatrixXd dow;
  if (cfg.day_of_week) dow = day_of_week_indicators(data.dates);

  LpDesign d;
  d.kind = cfg.kind;
  d.horizon = static_cast<int>(y_offsets.size()) - 1;
  d.lags = cfg.lags;
  d.column_names = plan.names;
  d.treatment_names = data.treatment_names;
  d.y_offsets = y_offsets;
  d.X.resize(t_count, j_count);
  d.Z.resize(t_count, j_count);
  d.Y.resize(t_count, static_cast<Eigen::Index>(y_offsets.size()));
  d.origins.reserve(static_cast<std::size_t>(t_count));

  const bool ld = cfg.kind == SpecKind::LongDifference;
  const auto& y = data.outcome;
  for (Eigen::Index i = 0; i < t_count; ++i) {
    const Eigen::Index t = bounds.first + i;
    d.origins.push_back(t);
    Eigen::Index c = 0;
    for (int m = 0; m < plan.n_treat; ++m, ++c) {
      d.X(i, c) = data.treatments(t, m);
      d.Z(i, c) = data.instruments(t, m);
    }
    d.X(i, c) = 1.0;
    d.Z(i, c) = 1.0;
    ++c;
    for (int l = 1; l <= cfg.lags; ++l, ++c) {
      const Eigen::Index k = t - l - lag_shift;
      const double v = ld ? y[k] - y[k - 1] : y[k];
      d.X(i, c) = v;
      d.Z(i, c) = v;
    }
    for (int n = 0; n < 2 * cfg.n_fourier; ++n, ++c) {
      d.X(i, c) = cal.fourier(t, n);
      d.Z(i, c) = cal.fourier(t, n);
    }
    for (Eigen::Index m = 0; m < data.controls.cols(); ++m, ++c) {
      d.X(i, c) = data.controls(t, m);
      d.Z(i, c) = data.controls(t, m);
    }
    if (cfg.day_of_week) {
      for (Eigen::Index m = 0; m < 6; ++m, ++c) {
        d.X(i, c) = dow(t, m);
        d.Z(i, c) = dow(t, m);
      }
    }
    for (Eigen::Index m = 0; m < data.indicators.cols(); ++m, ++c) {
      d.X(i, c) = data.indicators(t, m);
      d.Z(i, c) = data.indicators(t, m);
    }
    for (std::size_t h = 0; h < y_offsets.size(); ++h) {
      const double base = ld ? y[t - 1] : 0.0;
      d.Y(i, static_cast<Eigen::Index>(h)) = y[t + y_offsets[h]] - base;
    }
  }
  if (!d.X.allFinite() || !d.Z.allFinite() || !d.Y.allFinite())
    throw DataError("build_design: non-finite value in assembled design");
  return d;
}

}  // namespace

LpDesign build_design(const Dataset& data, const SpecConfig& config) {
  const TrimBounds bounds = trim_bounds(data.n(), config.lags, config.horizon, config.kind);
  std::vector<int> offsets(static_cast<std::size_t>(config.horizon) + 1);
  for (int h = 0; h <= config.horizon; ++h) offsets[static_cast<std::size_t>(h)] = h;
  return assemble(data, config, bounds, offsets, 0);
}

LpDesign build_lead_design(const Dataset& data, const SpecConfig& config, int n_leads) {
  if (n_leads < 1) throw DataError("build_lead_design: n_leads must be >= 1");
  SpecConfig cfg = config;
  cfg.kind = SpecKind::Level;  // leads measure pre-existing levels
  // Origins need n_leads + L past observations and nothing ahead.
  const Eigen::Index first = n_leads + cfg.lags;
  const Eigen::Index last = data.n() - 1;
  if (last < first)
    throw DataError("build_lead_design: insufficient data for " + std::to_string(n_leads) +
                    " leads and " + std::to_string(cfg.lags) + " lags");
  std::vector<int> offsets(static_cast<std::size_t>(n_leads));
  for (int i = 0; i < n_leads; ++i) offsets[static_cast<std::size_t>(i)] = -n_leads + i;
  return assemble(data, cfg, TrimBounds{first, last}, offsets, n_leads);
}

}  // namespace lpqb
