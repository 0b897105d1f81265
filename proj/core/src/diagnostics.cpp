#include "lpqb/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "lpqb/errors.hpp"
#include "lpqb/linalg.hpp"
#include "lpqb/stats.hpp"

namespace lpqb {

namespace {

struct OlsFit {
  Eigen::VectorXd coef;
  Eigen::VectorXd resid;
  double rss = 0.0;
};

OlsFit ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < x.cols())
    throw NumericError("diagnostics: collinear regressors (rank " + std::to_string(qr.rank()) +
                       " of " + std::to_string(x.cols()) + ")");
  OlsFit fit;
  fit.coef = qr.solve(y);
  fit.resid = y - x * fit.coef;
  fit.rss = fit.resid.squaredNorm();
  return fit;
}

// HC1 Wald statistic for the joint nullity of the first n_excl coefficients.
// An exact fit (zero residuals) sends the statistic to +infinity.
std::pair<double, double> robust_wald(const Eigen::MatrixXd& x, const OlsFit& fit, int n_excl) {
  const auto n = x.rows();
  const auto k = x.cols();
  const Eigen::MatrixXd xtx_inv = invert_spd(symmetrize(x.transpose() * x));
  const Eigen::MatrixXd xe = x.array().colwise() * fit.resid.array();
  Eigen::MatrixXd meat = xe.transpose() * xe;
  const double scale = static_cast<double>(n) / static_cast<double>(n - k);
  Eigen::MatrixXd vcov = scale * xtx_inv * meat * xtx_inv;
  const Eigen::MatrixXd v_excl = vcov.topLeftCorner(n_excl, n_excl);
  const Eigen::VectorXd b_excl = fit.coef.head(n_excl);
  if (v_excl.norm() <= 1e-24 * std::max(1.0, xtx_inv.norm()))
    return {std::numeric_limits<double>::infinity(), 0.0};
  const double wald = b_excl.dot(invert_spd(symmetrize(v_excl)) * b_excl);
  return {wald, chi2_sf(wald, static_cast<double>(n_excl))};
}

Eigen::VectorXd standardize_or_keep(const Eigen::VectorXd& v) {
  const double mean = v.mean();
  const double ss = (v.array() - mean).square().sum();
  if (ss <= 0.0) return v;  // constant column: leave as-is, rank check will flag it
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return (v.array() - mean) / sd;
}

// Regressor matrix [standardized excluded instruments | baseline controls]
// on the given design rows. The baseline controls are the non-treatment
// columns of Z, which is exactly what the estimation design conditions on.
Eigen::MatrixXd first_stage_regressors(const LpDesign& design,
                                       const std::vector<Eigen::Index>& rows) {
  const int n_r = design.n_treatments();
  const int j = design.n_cols();
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd x(n, j);
  for (Eigen::Index i = 0; i < n; ++i)
    x.row(i) = design.Z.row(rows[static_cast<std::size_t>(i)]);
  for (int m = 0; m < n_r; ++m) x.col(m) = standardize_or_keep(x.col(m));
  return x;
}

std::vector<Eigen::Index> all_rows(const LpDesign& design) {
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(design.n_obs()));
  for (Eigen::Index i = 0; i < design.n_obs(); ++i) rows[static_cast<std::size_t>(i)] = i;
  return rows;
}

struct StageStats {
  Eigen::VectorXd coefs;
  double partial_r2 = 0.0;
  double wald_stat = 0.0;
  double wald_p = 1.0;
};

StageStats excluded_instrument_stats(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                     int n_excl) {
  const OlsFit full = ols(x, y);
  const OlsFit restricted = ols(x.rightCols(x.cols() - n_excl), y);
  StageStats s;
  s.coefs = full.coef.head(n_excl);
  s.partial_r2 = restricted.rss > 0.0 ? (restricted.rss - full.rss) / restricted.rss : 0.0;
  const auto [wald, p] = robust_wald(x, full, n_excl);
  s.wald_stat = wald;
  s.wald_p = p;
  return s;
}

}  // namespace

FirstStageReport first_stage(const Dataset& data, const SpecConfig& config) {
  const LpDesign design = build_design(data, config);
  const auto rows = all_rows(design);
  const Eigen::MatrixXd x = first_stage_regressors(design, rows);
  const int n_r = design.n_treatments();

  FirstStageReport report;
  report.instrument_names = data.instrument_names;
  Eigen::MatrixXd coef_matrix(n_r, n_r);
  for (int m = 0; m < n_r; ++m) {
    const Eigen::VectorXd y = standardize_or_keep(design.X.col(m));
    const StageStats s = excluded_instrument_stats(x, y, n_r);
    coef_matrix.row(m) = s.coefs.transpose();
    FirstStageRow row;
    row.treatment = data.treatment_names[static_cast<std::size_t>(m)];
    row.instrument_coefs.assign(s.coefs.data(), s.coefs.data() + s.coefs.size());
    row.partial_r2 = s.partial_r2;
    row.wald_stat = s.wald_stat;
    row.wald_p = s.wald_p;
    report.rows.push_back(std::move(row));
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(coef_matrix);
  report.min_singular_value = svd.singularValues().minCoeff();
  return report;
}

std::vector<PlaceboRow> placebo_predetermined(const Dataset& data, const std::vector<int>& lags,
                                              const SpecConfig& config) {
  if (lags.empty()) throw ConfigError("placebo_predetermined: no lags requested");
  for (int l : lags)
    if (l < 1) throw ConfigError("placebo_predetermined: lags must be >= 1");
  const LpDesign design = build_design(data, config);
  const int n_r = design.n_treatments();

  // Predetermined market variables: the outcome, each treatment, and each
  // continuous control, taken at the requested lags before the origin.
  std::vector<std::string> names;
  std::vector<Eigen::VectorXd> series_list;
  names.push_back(data.outcome_name);
  series_list.push_back(data.outcome);
  for (int m = 0; m < data.n_treatments(); ++m) {
    names.push_back(data.treatment_names[static_cast<std::size_t>(m)]);
    series_list.push_back(data.treatments.col(m));
  }
  for (Eigen::Index c = 0; c < data.controls.cols(); ++c) {
    names.push_back(data.control_names[static_cast<std::size_t>(c)]);
    series_list.push_back(data.controls.col(c));
  }

  std::vector<PlaceboRow> out;
  for (std::size_t vi = 0; vi < names.size(); ++vi) {
    const std::string& name = names[vi];
    const Eigen::VectorXd& series = series_list[vi];
    for (int lag : lags) {
      std::vector<Eigen::Index> rows;
      for (Eigen::Index i = 0; i < design.n_obs(); ++i)
        if (design.origins[static_cast<std::size_t>(i)] - lag >= 0) rows.push_back(i);
      if (static_cast<Eigen::Index>(rows.size()) <= design.n_cols())
        throw DataError("placebo_predetermined: lag " + std::to_string(lag) +
                        " leaves too few usable origins");
      const Eigen::MatrixXd x = first_stage_regressors(design, rows);
      Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i)
        y[static_cast<Eigen::Index>(i)] =
            series[design.origins[static_cast<std::size_t>(rows[i])] - lag];
      y = standardize_or_keep(y);
      const StageStats s = excluded_instrument_stats(x, y, n_r);
      PlaceboRow row;
      row.variable = name;
      row.lag = lag;
      row.instrument_coefs.assign(s.coefs.data(), s.coefs.data() + s.coefs.size());
      row.partial_r2 = s.partial_r2;
      row.wald_stat = s.wald_stat;
      row.wald_p = s.wald_p;
      out.push_back(std::move(row));
    }
  }
  return out;
}

IrfResult lead_placebo(const Dataset& data, const SpecConfig& config,
                       const EstimationSettings& settings, int n_leads) {
  const LpDesign design = build_lead_design(data, config, n_leads);
  const MomentModel model(design, settings.cov);
  McmcConfig mcmc;
  mcmc.n_draws = settings.mcmc_draws;
  mcmc.n_burn = settings.mcmc_burn;
  mcmc.seed = settings.seed;
  mcmc.prior = settings.prior_mode;
  mcmc.prior_config = settings.prior;
  const Chain chain = run_gibbs(model, mcmc);
  const Eigen::VectorXd theta_hat = posterior_mean(chain);
  const Eigen::MatrixXd v = model.inference_covariance(theta_hat);
  return extract_irf(theta_hat, v, design, settings.level, settings.n_sim,
                     mix_key(settings.seed, 0x6c656164ULL), settings.workers);
}

}  // namespace lpqb
