#include "lpqb/simulate.hpp"

#include <cmath>

#include "lpqb/errors.hpp"
#include "lpqb/parallel.hpp"

namespace lpqb {

namespace {

void validate(const DgpParams& p) {
  if (!(std::abs(p.phi) < 1.0)) throw ConfigError("dgp: |phi| must be < 1");
  if (p.pi_z == 0.0) throw ConfigError("dgp: pi_z must be nonzero");
  // sigma_u = 0 switches the confounder off entirely (exogenous case);
  // the treatment and outcome noises must stay positive.
  if (!(p.sigma_u >= 0.0 && p.sigma_v > 0.0 && p.sigma_e > 0.0))
    throw ConfigError("dgp: need sigma_u >= 0 and positive sigma_v, sigma_e");
  if (p.n_obs < 2) throw ConfigError("dgp: n_obs must be >= 2");
  if (p.burn_in < 0) throw ConfigError("dgp: burn_in must be >= 0");
}

}  // namespace

Eigen::VectorXd true_irf(const DgpParams& params, int horizon) {
  validate(params);
  if (horizon < 0) throw ConfigError("true_irf: horizon must be >= 0");
  Eigen::VectorXd gamma(horizon + 1);
  double p = 1.0;
  for (int h = 0; h <= horizon; ++h) {
    gamma[h] = params.beta * p;
    p *= params.phi;
  }
  return gamma;
}

Dataset generate_dgp(const DgpParams& params, RngStream& rng) {
  validate(params);
  const Eigen::Index total = params.n_obs + params.burn_in;
  Eigen::VectorXd y(params.n_obs), r(params.n_obs), z(params.n_obs);
  double y_prev = 0.0;
  for (Eigen::Index t = 0; t < total; ++t) {
    const double zt = rng.normal();
    const double ut = params.sigma_u * rng.normal();
    const double vt = params.sigma_v * rng.normal();
    const double et = params.sigma_e * rng.normal();
    const double rt = params.pi_z * zt + params.kappa_u * ut + vt;
    const double yt = params.phi * y_prev + params.beta * rt + ut + et;
    y_prev = yt;
    const Eigen::Index i = t - params.burn_in;
    if (i >= 0) {
      y[i] = yt;
      r[i] = rt;
      z[i] = zt;
    }
  }
  std::vector<Date> dates(static_cast<std::size_t>(params.n_obs));
  const Date start = parse_date("2001-01-01");
  for (Eigen::Index i = 0; i < params.n_obs; ++i)
    dates[static_cast<std::size_t>(i)] = start + std::chrono::days(i);

  DatasetOptions opts;
  opts.standardize_treatments = false;
  opts.standardize_controls = false;
  return build_dataset(std::move(dates), "y", std::move(y), {"r"}, r, {"z"}, z, {},
                       Eigen::MatrixXd(params.n_obs, 0), {}, Eigen::MatrixXd(params.n_obs, 0),
                       opts);
}

namespace {

McEstimate package_estimate(const Eigen::VectorXd& theta_hat, const Eigen::MatrixXd& v,
                            const LpDesign& design, const EstimatorContext& ctx) {
  const int n_h = design.horizon + 1;
  std::vector<int> coords(static_cast<std::size_t>(n_h));
  for (int h = 0; h < n_h; ++h) coords[static_cast<std::size_t>(h)] = design.stacked_index(h, 0);

  McEstimate est;
  est.irf.resize(n_h);
  Eigen::MatrixXd sub(n_h, n_h);
  for (int a = 0; a < n_h; ++a) {
    est.irf[a] = theta_hat[coords[static_cast<std::size_t>(a)]];
    for (int b = 0; b < n_h; ++b)
      sub(a, b) = v(coords[static_cast<std::size_t>(a)], coords[static_cast<std::size_t>(b)]);
  }
  est.pointwise = pointwise_intervals(theta_hat, v, ctx.level, coords);
  est.band = sup_t_band(est.irf, sub, ctx.level, ctx.n_sim_band, ctx.band_seed).band;
  return est;
}

McEstimate fit_gmm(const Dataset& data, const EstimatorContext& ctx) {
  const LpDesign design = build_design(data, ctx.spec);
  const TwoStepGmm fit = two_step_gmm(design, ctx.cov);
  const CovMode inf_mode = ctx.cov == CovMode::BlockDiag ? CovMode::Plain : ctx.cov;
  const Eigen::MatrixXd sigma = moment_covariance(design, fit.theta, inf_mode);
  const Eigen::MatrixXd ztx = design.Z.transpose() * design.X;
  Eigen::MatrixXd g_hat =
      Eigen::MatrixXd::Zero(design.stacked_dim(), design.stacked_dim());
  for (int h = 0; h <= design.horizon; ++h)
    g_hat.block(h * design.n_cols(), h * design.n_cols(), design.n_cols(), design.n_cols()) =
        -ztx / static_cast<double>(design.n_obs());
  const Eigen::MatrixXd v = sandwich_covariance(g_hat, fit.w2, sigma, design.n_obs());
  return package_estimate(fit.theta, v, design, ctx);
}

McEstimate fit_quasi_bayes(const Dataset& data, const EstimatorContext& ctx) {
  const LpDesign design = build_design(data, ctx.spec);
  const MomentModel model(design, ctx.cov);
  const Chain chain = run_gibbs(model, ctx.mcmc);
  const Eigen::VectorXd theta_hat = posterior_mean(chain);
  const Eigen::MatrixXd v = model.inference_covariance(theta_hat);
  return package_estimate(theta_hat, v, design, ctx);
}

}  // namespace

std::vector<McEstimator> standard_estimators(const std::vector<std::string>& names) {
  std::vector<McEstimator> out;
  for (const auto& name : names) {
    if (name == "gmm") {
      out.push_back({name, fit_gmm});
    } else if (name == "qb_flat") {
      out.push_back({name, [](const Dataset& d, const EstimatorContext& ctx) {
                       EstimatorContext c = ctx;
                       c.mcmc.prior = PriorMode::Flat;
                       return fit_quasi_bayes(d, c);
                     }});
    } else if (name == "qb_rp") {
      out.push_back({name, [](const Dataset& d, const EstimatorContext& ctx) {
                       EstimatorContext c = ctx;
                       c.mcmc.prior = PriorMode::Roughness;
                       return fit_quasi_bayes(d, c);
                     }});
    } else {
      throw ConfigError("standard_estimators: unknown estimator '" + name + "'");
    }
  }
  return out;
}

McReport run_monte_carlo(const McGrid& grid) {
  return run_monte_carlo(grid, standard_estimators(grid.estimators));
}

McReport run_monte_carlo(const McGrid& grid, const std::vector<McEstimator>& estimators) {
  if (grid.replications < 1) throw ConfigError("run_monte_carlo: replications must be >= 1");
  if (estimators.empty()) throw ConfigError("run_monte_carlo: no estimators");
  const int n_h = grid.horizon + 1;
  const Eigen::VectorXd gamma = true_irf(grid.dgp, grid.horizon);

  McReport report;
  report.replications = grid.replications;
  report.seed = grid.seed;

  struct RepResult {
    std::vector<McEstimate> fits;  // per estimator
    std::vector<char> ok;
  };

  for (const Eigen::Index t_count : grid.sample_sizes) {
    std::vector<RepResult> results(static_cast<std::size_t>(grid.replications));

    parallel_for(grid.replications, grid.workers, [&](long rep) {
      // T is the usable origin count after trimming, so the raw series is
      // longer by the lag and lead allowances.
      DgpParams params = grid.dgp;
      params.n_obs = t_count + grid.lags + grid.horizon + 1;
      const std::uint64_t base =
          mix_key(grid.seed, static_cast<std::uint64_t>(t_count), static_cast<std::uint64_t>(rep));
      RngStream dgp_rng(base, 0);
      const Dataset data = generate_dgp(params, dgp_rng);

      auto& slot = results[static_cast<std::size_t>(rep)];
      slot.fits.resize(estimators.size());
      slot.ok.assign(estimators.size(), 0);
      for (std::size_t q = 0; q < estimators.size(); ++q) {
        EstimatorContext ctx;
        ctx.spec.kind = SpecKind::LongDifference;
        ctx.spec.horizon = grid.horizon;
        ctx.spec.lags = grid.lags;
        ctx.spec.n_fourier = 0;
        ctx.spec.day_of_week = false;
        ctx.cov = grid.cov;
        ctx.level = grid.level;
        ctx.n_sim_band = grid.n_sim_band;
        ctx.mcmc.n_draws = grid.mcmc_draws;
        ctx.mcmc.n_burn = grid.mcmc_burn;
        ctx.mcmc.seed = mix_key(base, 1000 + q);
        ctx.mcmc.prior_config = grid.prior;
        ctx.band_seed = mix_key(base, 2000 + q);
        try {
          slot.fits[q] = estimators[q].fn(data, ctx);
          slot.ok[q] = 1;
        } catch (const Error&) {
          slot.ok[q] = 0;  // counted below, never silently dropped
        }
      }
    });

    for (std::size_t q = 0; q < estimators.size(); ++q) {
      Eigen::VectorXd bias = Eigen::VectorXd::Zero(n_h);
      Eigen::VectorXd mse = Eigen::VectorXd::Zero(n_h);
      Eigen::VectorXd length = Eigen::VectorXd::Zero(n_h);
      Eigen::VectorXd cover = Eigen::VectorXd::Zero(n_h);
      double band_cover = 0.0;
      int n_used = 0, n_failed = 0;
      for (const auto& slot : results) {
        if (!slot.ok[q]) {
          ++n_failed;
          continue;
        }
        ++n_used;
        const auto& fit = slot.fits[q];
        bool all_in_band = true;
        for (int h = 0; h < n_h; ++h) {
          const double err = fit.irf[h] - gamma[h];
          bias[h] += err;
          mse[h] += err * err;
          const auto& ci = fit.pointwise[static_cast<std::size_t>(h)];
          length[h] += ci.hi - ci.lo;
          if (gamma[h] >= ci.lo && gamma[h] <= ci.hi) cover[h] += 1.0;
          const auto& bd = fit.band[static_cast<std::size_t>(h)];
          if (!(gamma[h] >= bd.lo && gamma[h] <= bd.hi)) all_in_band = false;
        }
        if (all_in_band) band_cover += 1.0;
      }
      if (n_used == 0)
        throw NumericError("run_monte_carlo: every replication failed for estimator '" +
                           estimators[q].name + "' at T=" + std::to_string(t_count));
      const double denom = static_cast<double>(n_used);
      for (int h = 0; h < n_h; ++h) {
        McPointwiseRow row;
        row.estimator = estimators[q].name;
        row.t_count = t_count;
        row.horizon = h;
        row.bias = bias[h] / denom;
        row.rmse = std::sqrt(mse[h] / denom);
        row.length = length[h] / denom;
        row.coverage = cover[h] / denom;
        report.pointwise.push_back(std::move(row));
      }
      report.simultaneous.push_back(
          {estimators[q].name, t_count, band_cover / denom, n_used, n_failed});
    }
  }
  return report;
}

}  // namespace lpqb
